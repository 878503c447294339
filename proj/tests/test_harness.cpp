#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ellstat/harness.hpp"
#include "oracles.hpp"

using namespace ellstat;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

std::vector<double> general_angles(const ClassTable& table) {
  std::vector<double> out;
  for (const auto& c : table.classes())
    if (!c.special())
      for (std::uint32_t i = 0; i < c.orbit_size; ++i) out.push_back(c.stats.angle);
  return out;
}

Report run(std::int64_t x, BoxSpec box, Statistic stat, int jobs = 1) {
  SweepConfig c;
  c.x = x;
  c.box = box;
  c.stat = stat;
  c.jobs = jobs;
  return sweep(c);
}

}  // namespace

TEST_CASE("per-prime counts at p = 5") {
  const double pi = std::numbers::pi;
  const auto table = build_class_table(build_context(5));
  const auto full = per_prime_counts(table, 0, pi, {1, 2, 9});
  CHECK(full.t_count == 12);
  CHECK(full.pair_count == 12);
  CHECK(full.c_count == 12);
  CHECK(full.d_counts.at(1) == 12);
  CHECK(full.d_counts.at(2) == 4);
  CHECK(full.d_counts.at(9) == 2);
  CHECK(full.skipped_singular == 16 - 12);

  CHECK(per_prime_counts(table, pi / 2, pi, {}).t_count == 6);

  std::multiset<std::int64_t> orders;
  for (const auto& c : table.classes())
    if (!c.special()) orders.insert(c.stats.order);
  CHECK(orders == std::multiset<std::int64_t>{3, 4, 5, 7, 8, 9});
}

TEST_CASE("per-prime counts against direct enumeration") {
  for (std::int64_t p : {7, 11, 13, 29}) {
    const auto table = build_class_table(build_context(p));
    const double alpha = 0.7, beta = 2.2;
    const auto rec = per_prime_counts(table, alpha, beta, {1, 2, 3, 4, 6, 12});
    std::int64_t t = 0, c = 0, d2 = 0, d3 = 0, d12 = 0;
    for (std::int64_t a = 1; a < p; ++a)
      for (std::int64_t b = 1; b < p; ++b) {
        if (oracle::singular(p, a, b)) continue;
        const auto tr = oracle::trace(p, a, b);
        const double psi = std::acos(tr / (2 * std::sqrt(double(p))));
        if (alpha <= psi && psi <= beta) ++t;
        if (oracle::group(p, a, b).first == 1) ++c;
        const auto N = p + 1 - tr;
        d2 += N % 2 == 0;
        d3 += N % 3 == 0;
        d12 += N % 12 == 0;
      }
    CHECK(rec.t_count == t);
    CHECK(rec.c_count == c);
    CHECK(rec.d_counts.at(2) == d2);
    CHECK(rec.d_counts.at(3) == d3);
    CHECK(rec.d_counts.at(12) == d12);
    CHECK(rec.d_counts.at(1) == (p - 1) * (p - 2));
  }
}

TEST_CASE("divisibility counts are monotone along divisors") {
  for (auto p : prime_list(300)) {
    if (p <= 3) continue;
    const auto table = build_class_table(build_context(p));
    std::vector<std::int64_t> ms;
    for (std::int64_t m = 1; m <= 24; ++m) ms.push_back(m);
    const auto rec = per_prime_counts(table, 0, std::numbers::pi, ms);
    for (auto m : ms)
      for (auto m2 : ms)
        if (m % m2 == 0) CHECK(rec.d_counts.at(m) <= rec.d_counts.at(m2));
    CHECK(rec.t_count <= (p - 1) * (p - 2));
  }
}

TEST_CASE("discrepancy worked values") {
  const auto t5 = build_class_table(build_context(5));
  CHECK(st_discrepancy(t5) == doctest::Approx(13.0).epsilon(1e-12));
  CHECK(st_discrepancy(t5) <= std::pow(5.0, 1.75));
  for (std::int64_t p : {7, 11, 101}) {
    const auto t = build_class_table(build_context(p));
    CHECK(st_discrepancy(t) >= 3 * p - 2 - 1e-9);
  }
}

TEST_CASE("discrepancy agrees with exhaustive interval search") {
  for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59}) {
    CAPTURE(p);
    const auto table = build_class_table(build_context(p));
    CHECK(st_discrepancy(table) ==
          doctest::Approx(oracle::discrepancy(general_angles(table), p)).epsilon(1e-9));
  }
}

TEST_CASE("Katz moments") {
  const auto t5 = build_class_table(build_context(5));
  CHECK(katz_moment(t5, 1) == 0.0);
  CHECK(katz_moment(t5, 2) == doctest::Approx(-0.05).epsilon(1e-12));
  for (std::int64_t p : {7, 11, 97, 211}) {
    const auto t = build_class_table(build_context(p));
    for (int n : {1, 3, 5, 7, 9}) CHECK(katz_moment(t, n) == 0.0);
    // Direct evaluation of sin((n+1) psi) / sin(psi).
    for (int n : {2, 4, 6}) {
      double direct = 0;
      for (double psi : general_angles(t)) direct += std::sin((n + 1) * psi) / std::sin(psi);
      CHECK(katz_moment(t, n) == doctest::Approx(direct / double((p - 1) * (p - 1))).epsilon(1e-9));
    }
  }
  CHECK(code_of([&] { katz_moment(t5, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("sweep worked values") {
  const double pi = std::numbers::pi;
  CHECK(run(5, {1, 1}, CyclicStat{}).aggregate == 6);
  CHECK(run(5, {1, 1}, DivisibleStat{2}).aggregate == 6);
  CHECK(run(5, {1, 1}, SatoTateStat{0, pi / 2}).aggregate == 3);
  CHECK(run(5, {1, 1}, VarpiOrderStat{3, 0}).aggregate == 4);
  CHECK(run(5, {1, 1}, VarpiTraceStat{5, 2}).aggregate == 3);
}

TEST_CASE("sweep report bookkeeping") {
  const auto r = run(60, {4, 6}, DivisibleStat{3}, 3);
  std::int64_t sum = 0;
  for (const auto& row : r.per_prime) sum += row.count;
  CHECK(r.aggregate == sum);
  CHECK(r.per_prime.front().p == 5);
  CHECK(r.per_prime.back().p == 59);
  CHECK(r.prime_count == 17);
  REQUIRE(r.main_term.has_value());
  CHECK(*r.main_term == doctest::Approx(4 * (7.0 / 16) * 4 * 6 * 17));
  CHECK(*r.relative_deviation == doctest::Approx(std::abs(r.aggregate / *r.main_term - 1)));
  CHECK_FALSE(r.warnings.empty());

  const auto v = run(30, {2, 2}, VarpiOrderStat{4, 1});
  CHECK_FALSE(v.main_term.has_value());
  const auto lt = run(30, {2, 2}, LangTrotterStat{0});
  CHECK(*lt.main_term == doctest::Approx(4 * 2 * 2 * std::numbers::pi / 3 * std::sqrt(30.0) / std::log(30.0)));
}

TEST_CASE("sweep over a full residue box reproduces per-prime counts") {
  for (std::int64_t p : {5, 7, 11}) {
    const auto table = build_class_table(build_context(p));
    const std::int64_t h = (p - 1) / 2;
    const auto rec = per_prime_counts(table, 0, std::numbers::pi, {2});
    std::int64_t axis_cyclic = 0;
    for (const auto& c : table.classes())
      if (c.special() && c.stats.cyclic()) axis_cyclic += c.orbit_size;
    const auto r = run(p, {h, h}, CyclicStat{});
    CHECK(r.per_prime.back().p == p);
    CHECK(r.per_prime.back().count == rec.c_count + axis_cyclic);
  }
}

TEST_CASE("sweep is independent of the worker count") {
  const auto one = run(150, {7, 5, 2, -3}, SatoTateStat{0.4, 2.5}, 1);
  for (int jobs : {2, 3, 8}) {
    const auto many = run(150, {7, 5, 2, -3}, SatoTateStat{0.4, 2.5}, jobs);
    CHECK(many.aggregate == one.aggregate);
    REQUIRE(many.per_prime.size() == one.per_prime.size());
    for (std::size_t i = 0; i < one.per_prime.size(); ++i) {
      CHECK(many.per_prime[i].count == one.per_prime[i].count);
      CHECK(many.per_prime[i].expected == one.per_prime[i].expected);
    }
    CHECK(*many.main_term == *one.main_term);
  }
}

TEST_CASE("sweep validation") {
  CHECK(code_of([] { run(5, {1, 1}, SatoTateStat{2.0, 1.0}); }) == ErrorCode::InvalidInterval);
  CHECK(code_of([] { run(5, {1, 1}, DivisibleStat{0}); }) == ErrorCode::InvalidStatistic);
  CHECK(code_of([] { run(5, {1, 1}, VarpiTraceStat{0, 1}); }) == ErrorCode::InvalidStatistic);
  CHECK(code_of([] { run(4, {1, 1}, CyclicStat{}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { run(5, {0, 1}, CyclicStat{}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("statistic predicates") {
  CurveStats s;
  s.order = 12;
  s.trace = -2;
  s.angle = 1.0;
  s.group = {2, 6};
  CHECK(satisfies(DivisibleStat{4}, s));
  CHECK_FALSE(satisfies(DivisibleStat{5}, s));
  CHECK_FALSE(satisfies(CyclicStat{}, s));
  CHECK(satisfies(LangTrotterStat{-2}, s));
  CHECK(satisfies(VarpiOrderStat{5, 2}, s));
  CHECK(satisfies(VarpiTraceStat{5, 3}, s));
  CHECK(satisfies(SatoTateStat{1.0, 1.5}, s));
  CHECK(stat_name(CyclicStat{}) == "cyclic");
}
