#include <doctest.h>

#include <cmath>
#include <complex>

#include "ellstat/charsums.hpp"
#include "oracles.hpp"

using namespace ellstat;

namespace {

// Characters rebuilt from scratch: chi_j(g^k) = exp(2 pi i j k / (p-1)).
struct NaiveCharacters {
  std::int64_t p;
  std::vector<std::int64_t> log;

  explicit NaiveCharacters(std::int64_t prime) : p(prime), log(prime, -1) {
    std::int64_t g = 2;
    for (;; ++g) {
      bool ok = true;
      for (std::int64_t d = 1; d < p - 1; ++d)
        if ((p - 1) % d == 0 && oracle::powmod(g, d, p) == 1) ok = false;
      if (ok) break;
    }
    std::int64_t x = 1;
    for (std::int64_t k = 0; k < p - 1; ++k, x = x * g % p) log[x] = k;
  }

  std::complex<double> operator()(std::int64_t j, std::int64_t n) const {
    n = oracle::mod(n, p);
    if (n == 0) return 0.0;
    return std::polar(1.0, 2.0 * std::acos(-1.0) * double(j * log[n] % (p - 1)) / double(p - 1));
  }
};

}  // namespace

TEST_CASE("interval sums worked values") {
  const auto ctx = build_context(7);
  CHECK(std::abs(interval_char_sum(character(ctx, 0), 0, 6).value - 6.0) < 1e-12);
  CHECK(std::abs(interval_char_sum(character(ctx, 3), 0, 6).value) < 1e-12);
  CHECK(std::abs(interval_char_sum(character(ctx, 3), 0, 3).value - 1.0) < 1e-12);
  const auto d = interval_char_sum(character(ctx, 2), 4, 9);
  CHECK(d.p == 7);
  CHECK(d.start == 4);
  CHECK(d.length == 9);
  CHECK(d.index == 2);
}

TEST_CASE("interval sums match naive evaluation") {
  for (std::int64_t p : {5, 11, 29, 53}) {
    const auto ctx = build_context(p);
    const NaiveCharacters naive(p);
    for (std::int64_t j = 0; j < p - 1; ++j)
      for (std::int64_t L : {-7, 0, 3, 40})
        for (std::int64_t M : {1, 2, 5, 17, 60}) {
          std::complex<double> want = 0;
          for (std::int64_t n = L + 1; n <= L + M; ++n) want += naive(j, n);
          const auto got = interval_char_sum(character(ctx, j), L, M).value;
          CHECK(std::abs(got - want) < 1e-9);
          CHECK(std::abs(got) <= M + 1e-9);
        }
  }
}

TEST_CASE("Polya-Vinogradov shape with slack for p <= 200") {
  for (auto p : prime_list(200)) {
    if (p <= 3) continue;
    const auto ctx = build_context(p);
    const double cap = std::sqrt(double(p)) * std::log(double(p)) + 1.0;
    for (std::int64_t j = 1; j < p - 1; ++j) {
      const auto chi = character(ctx, j);
      std::complex<double> prefix = 0;
      for (std::int64_t M = 1; M <= p; ++M) {
        prefix += chi(M);
        REQUIRE(std::abs(prefix) <= std::min(double(M), cap) + 1e-9);
      }
      CHECK(std::abs(interval_char_sum(chi, 0, p / 2).value) <= cap);
    }
  }
}

TEST_CASE("sigma and rho worked values") {
  const auto s7 = sigma_rho(build_context(7), 2);
  CHECK(s7.sigma == doctest::Approx(2.0));
  CHECK(s7.rho == doctest::Approx(2.0));
  CHECK(sigma_rho(build_context(5), 1).sigma == doctest::Approx(1.0));
}

TEST_CASE("sigma and rho agree with a naive maximum") {
  for (std::int64_t p : {5, 7, 13, 37, 61, 97}) {
    const auto ctx = build_context(p);
    const NaiveCharacters naive(p);
    const auto table = sigma_rho_table(ctx, p - 1);
    for (std::int64_t M = 1; M < p; ++M) {
      double sigma = 1.0, rho = 1.0;
      for (std::int64_t j = 1; j < p - 1; ++j) {
        std::complex<double> s = 0;
        for (std::int64_t n = 1; n <= M; ++n) s += naive(j, n);
        const auto order = (p - 1) / std::gcd(j, p - 1);
        if (ctx.d_p() % order == 0) sigma = std::max(sigma, std::abs(s));
        if (ctx.e_p() % order == 0) rho = std::max(rho, std::abs(s));
      }
      CHECK(table[M].sigma == doctest::Approx(sigma).epsilon(1e-9));
      CHECK(table[M].rho == doctest::Approx(rho).epsilon(1e-9));
      CHECK(sigma_rho(ctx, M).sigma == table[M].sigma);
    }
  }
}

TEST_CASE("fourth moment worked values") {
  const auto c5 = build_context(5);
  const auto fm = fourth_moment(c5, Window::signed_box(1));
  CHECK(fm.char_side == doctest::Approx(16.0));
  CHECK(fm.count_side == 8);
  CHECK(fourth_moment(build_context(7), Window::interval(0, 6)).char_side ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fourth_moment(c5, Window{{1}}).count_side == 1);
}

TEST_CASE("fourth moment count side equals direct quadruple count") {
  for (std::int64_t p : {5, 7, 11, 23, 47}) {
    const auto ctx = build_context(p);
    for (const auto& w : {Window::signed_box(3), Window::interval(2, 9), Window::interval(-4, 12)}) {
      std::int64_t quads = 0;
      for (auto a : w.values)
        for (auto b : w.values)
          for (auto c : w.values)
            for (auto d : w.values) {
              if (oracle::mod(a * b * c * d, p) == 0) continue;
              if (oracle::mod(a * b - c * d, p) == 0) ++quads;
            }
      const auto fm = fourth_moment(ctx, w);
      CHECK(fm.count_side == quads);
      CHECK(fm.all_characters / double(p - 1) == doctest::Approx(double(quads)).epsilon(1e-9));
    }
  }
}

TEST_CASE("fourth moment envelope is reported, not asserted") {
  std::int64_t violations = 0;
  for (auto p : prime_list(500)) {
    if (p <= 3) continue;
    const auto ctx = build_context(p);
    for (std::int64_t M = 1; M * M <= p; M += 3) {
      const auto fm = fourth_moment(ctx, Window::interval(0, M));
      if (fm.char_side > 10.0 * p * M * M * std::pow(std::log(double(p)), 2)) ++violations;
    }
  }
  MESSAGE("fourth-moment envelope violations (C = 10): " << violations);
}

TEST_CASE("burgess bound formula") {
  const double l7 = std::log(7.0);
  CHECK(burgess_bound(7, 3, 1) == doctest::Approx(std::sqrt(7.0) * l7));
  CHECK(burgess_bound(7, 1, 1) == doctest::Approx(std::sqrt(7.0) * l7));
  CHECK(burgess_bound(7, 3, 2) == doctest::Approx(std::sqrt(3.0) * std::pow(7.0, 3.0 / 16) * std::sqrt(l7)));
  CHECK(burgess_bound(7, 3, 2) == doctest::Approx(3.48).epsilon(1e-3));
  CHECK_THROWS_AS(burgess_bound(7, 3, 0), Error);
}

TEST_CASE("census worked values and monotonicity") {
  CHECK(garaev_census(10, 4, 1.0 / 24).count == 0);
  CHECK(garaev_census(5, 2, 1.0 / 24).count == 0);
  CHECK(garaev_census(10, 1, 0.0).count == 0);
  const auto r = garaev_census(400, 20, 0.05);
  CHECK(r.envelope == doctest::Approx(std::pow(400.0, 0.75 + 0.2)));
  CHECK(r.count == static_cast<std::int64_t>(r.exceptional_primes.size()));
  CHECK(r.primes_checked == static_cast<std::int64_t>(prime_list(400).size()) - 2);

  std::int64_t last = 1 << 30;
  for (double eta : {0.0, 0.01, 0.02, 0.04, 0.06}) {
    const auto c = garaev_census(600, 30, eta);
    CHECK(c.count <= last);
    last = c.count;
  }
}

TEST_CASE("census matches its definition") {
  const auto r = garaev_census(150, 12, 0.03);
  std::vector<std::int64_t> expected;
  for (auto p : prime_list(150)) {
    if (p <= 3) continue;
    const auto ctx = build_context(p);
    bool hit = false;
    for (const auto& chi : characters_of_order_dividing(ctx, ctx.d_p()))
      if (std::abs(interval_char_sum(chi, 0, 12).value) > std::pow(12.0, 0.97)) hit = true;
    if (hit) expected.push_back(p);
  }
  CHECK(r.exceptional_primes == expected);
}

TEST_CASE("error functionals") {
  const auto e = error_bounds(7, 2, 2, 2.0, 2.0);
  CHECK(e.e1 == doctest::Approx(4 + 2 * std::sqrt(2.0) * std::pow(7.0, 0.25) + 2 * std::sqrt(7.0)));
  CHECK(e.e1 == doctest::Approx(13.89).epsilon(1e-3));
  CHECK(e.e2 == doctest::Approx(4 + std::sqrt(2.0) * 7 * std::log(7.0)));
  CHECK(e.e2 == doctest::Approx(23.26).epsilon(1e-3));

  const auto f = error_bounds(101, 3, 8, 2.5, 1.5);
  const double p = 101, A = 3, B = 8;
  CHECK(f.e1 == doctest::Approx(std::min(A * 2.5 + std::sqrt(A) * B * std::pow(p, 0.25) + std::sqrt(A * B * p),
                                         B * 1.5 + A * std::sqrt(B) * std::pow(p, 0.25) + std::sqrt(A * B * p))));
  CHECK(f.e2 == doctest::Approx(std::min(A * 2.5 + std::sqrt(B) * p * std::log(p),
                                         B * 1.5 + std::sqrt(A) * p * std::log(p))));
}
