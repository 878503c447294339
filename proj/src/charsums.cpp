#include "ellstat/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ellstat/error.hpp"

namespace ellstat {

namespace {

// Running sums of chi(1..M) for each character in `chars`, reporting the
// largest modulus seen at each M through `emit(M, max_abs)`.
template <typename Emit>
void scan_prefix_maxima(const PrimeContext& ctx, const std::vector<CharacterHandle>& chars,
                        std::int64_t max_M, Emit&& emit) {
  std::vector<std::complex<double>> running(chars.size());
  std::vector<std::vector<std::complex<double>>> roots;
  roots.reserve(chars.size());
  for (const auto& chi : chars) {
    std::vector<std::complex<double>> table(chi.order());
    for (std::uint32_t k = 0; k < chi.order(); ++k) table[k] = root_of_unity(k, chi.order());
    roots.push_back(std::move(table));
  }
  for (std::int64_t n = 1; n <= max_M; ++n) {
    const Residue r = ctx.reduce(n);
    double best = 0.0;
    for (std::size_t i = 0; i < chars.size(); ++i) {
      if (r != 0) running[i] += roots[i][chars[i].exponent(r)];
      best = std::max(best, std::abs(running[i]));
    }
    emit(n, best);
  }
}

}  // namespace

SumDiagnostics interval_char_sum(const CharacterHandle& chi, std::int64_t L, std::int64_t M) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "window length M must be at least 1");
  const auto& ctx = chi.context();
  std::vector<std::int64_t> bins(chi.order(), 0);
  for (std::int64_t n = L + 1; n <= L + M; ++n) {
    const Residue r = ctx.reduce(n);
    if (r != 0) ++bins[chi.exponent(r)];
  }
  std::complex<double> value{0.0, 0.0};
  for (std::uint32_t k = 0; k < chi.order(); ++k)
    if (bins[k]) value += static_cast<double>(bins[k]) * root_of_unity(k, chi.order());
  return {value, ctx.p(), L, M, chi.index()};
}

std::vector<SigmaRho> sigma_rho_table(const PrimeContext& ctx, std::int64_t max_M) {
  if (max_M < 1) throw Error(ErrorCode::InvalidArgument, "M must be at least 1");
  std::vector<SigmaRho> out(static_cast<std::size_t>(max_M) + 1);
  const auto sigma_chars = characters_of_order_dividing(ctx, ctx.d_p());
  const auto rho_chars = characters_of_order_dividing(ctx, ctx.e_p());
  scan_prefix_maxima(ctx, sigma_chars, max_M, [&](std::int64_t M, double best) {
    out[static_cast<std::size_t>(M)].sigma = std::max(1.0, best);
  });
  scan_prefix_maxima(ctx, rho_chars, max_M, [&](std::int64_t M, double best) {
    out[static_cast<std::size_t>(M)].rho = std::max(1.0, best);
  });
  return out;
}

SigmaRho sigma_rho(const PrimeContext& ctx, std::int64_t M) {
  return sigma_rho_table(ctx, M)[static_cast<std::size_t>(M)];
}

Window Window::signed_box(std::int64_t B) {
  Window w;
  for (std::int64_t b = -B; b <= B; ++b)
    if (b != 0) w.values.push_back(b);
  return w;
}

Window Window::interval(std::int64_t L, std::int64_t M) {
  Window w;
  for (std::int64_t n = L + 1; n <= L + M; ++n) w.values.push_back(n);
  return w;
}

FourthMoment fourth_moment(const PrimeContext& ctx, const Window& window) {
  if (window.values.empty()) throw Error(ErrorCode::InvalidArgument, "window must be nonempty");
  const Residue p = ctx.p();
  const std::uint32_t group = p - 1;

  // Histogram of discrete logs; S(chi_j) = sum_k h[k] zeta^{jk}.
  std::vector<std::int64_t> h(group, 0);
  std::vector<Residue> units;
  for (auto n : window.values) {
    const Residue r = ctx.reduce(n);
    if (r == 0) continue;
    ++h[ctx.dlog(r)];
    units.push_back(r);
  }

  FourthMoment out;
  std::vector<std::complex<double>> zeta(group);
  for (std::uint32_t k = 0; k < group; ++k) zeta[k] = root_of_unity(k, group);
  for (std::uint32_t j = 0; j < group; ++j) {
    std::complex<double> s{0.0, 0.0};
    for (std::uint32_t k = 0; k < group; ++k)
      if (h[k]) s += static_cast<double>(h[k]) * zeta[(std::uint64_t{j} * k) % group];
    const double m2 = std::norm(s);
    out.all_characters += m2 * m2;
    if (j != 0) out.char_side += m2 * m2;
  }

  std::vector<std::int64_t> products(p, 0);
  for (auto x : units)
    for (auto y : units) ++products[ctx.mul(x, y)];
  for (auto c : products) out.count_side += c * c;
  return out;
}

double burgess_bound(std::int64_t p, std::int64_t M, int nu) {
  if (nu < 1) throw Error(ErrorCode::InvalidArgument, "nu must be at least 1");
  const double n = nu;
  const double lp = std::log(static_cast<double>(p));
  return std::pow(static_cast<double>(M), 1.0 - 1.0 / n) *
         std::pow(static_cast<double>(p), (n + 1.0) / (4.0 * n * n)) * std::pow(lp, 1.0 / n);
}

CensusResult garaev_census(std::int64_t x, std::int64_t M, double eta) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "M must be at least 1");
  CensusResult out;
  const double threshold = std::pow(static_cast<double>(M), 1.0 - eta);
  out.envelope = std::pow(static_cast<double>(x), 0.75 + 4.0 * eta);
  for (auto p : prime_list(x)) {
    if (p <= 3) continue;
    if (p > kMaxPrime) break;
    ++out.primes_checked;
    const auto ctx = build_context(p);
    const auto chars = characters_of_order_dividing(ctx, ctx.d_p());
    bool exceptional = false;
    for (const auto& chi : chars) {
      if (std::abs(interval_char_sum(chi, 0, M).value) > threshold) {
        exceptional = true;
        break;
      }
    }
    if (exceptional) out.exceptional_primes.push_back(p);
  }
  out.count = static_cast<std::int64_t>(out.exceptional_primes.size());
  return out;
}

ErrorBounds error_bounds(std::int64_t p, std::int64_t A, std::int64_t B, double sigma, double rho) {
  const double a = static_cast<double>(A);
  const double b = static_cast<double>(B);
  const double q = static_cast<double>(p);
  const double shared = std::sqrt(a * b) * std::sqrt(q);
  const double q4 = std::pow(q, 0.25);
  const double plog = q * std::log(q);
  ErrorBounds out;
  out.e1 = std::min(a * sigma + std::sqrt(a) * b * q4 + shared,
                    b * rho + a * std::sqrt(b) * q4 + shared);
  out.e2 = std::min(a * sigma + std::sqrt(b) * plog, b * rho + std::sqrt(a) * plog);
  return out;
}

}  // namespace ellstat
