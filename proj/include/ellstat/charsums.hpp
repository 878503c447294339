#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ellstat/ffield.hpp"

namespace ellstat {

struct SumDiagnostics {
  std::complex<double> value;
  std::int64_t p = 0;
  std::int64_t start = 0;   ///< L: the window is L+1 .. L+M
  std::int64_t length = 0;  ///< M
  std::uint32_t index = 0;  ///< character index j
};

/// Sum of chi(n) for n = L+1 .. L+M, with chi vanishing on multiples of p.
/// Values are grouped by exponent first, so each root of unity is touched once.
SumDiagnostics interval_char_sum(const CharacterHandle& chi, std::int64_t L, std::int64_t M);

struct SigmaRho {
  double sigma = 1.0;  ///< max over chi != chi_0, chi^{d_p} = chi_0 of max(1, |sum_{n<=M} chi(n)|)
  double rho = 1.0;    ///< same with e_p
};

SigmaRho sigma_rho(const PrimeContext& ctx, std::int64_t M);

/// sigma_p(M) and rho_p(M) for every M = 1 .. max_M, sharing the prefix sums.
/// Entry 0 is unused.
std::vector<SigmaRho> sigma_rho_table(const PrimeContext& ctx, std::int64_t max_M);

/// A multiset of integers (taken mod p) over which fourth moments are formed.
struct Window {
  std::vector<std::int64_t> values;

  static Window signed_box(std::int64_t B);                    ///< 1 <= |n| <= B
  static Window interval(std::int64_t L, std::int64_t M);      ///< L+1 .. L+M
};

struct FourthMoment {
  double char_side = 0.0;        ///< sum over chi != chi_0 of |sum_window chi(n)|^4
  double all_characters = 0.0;   ///< same including chi_0
  std::int64_t count_side = 0;   ///< #{n1 n2 = n3 n4 mod p}, units of the window only
};

/// Both sides of the identity count_side = all_characters / (p - 1).
/// Window entries divisible by p are dropped (every character vanishes there).
FourthMoment fourth_moment(const PrimeContext& ctx, const Window& window);

/// M^{1-1/nu} p^{(nu+1)/(4 nu^2)} (ln p)^{1/nu}, implied constant 1.
double burgess_bound(std::int64_t p, std::int64_t M, int nu);

struct CensusResult {
  std::vector<std::int64_t> exceptional_primes;
  std::int64_t count = 0;
  std::int64_t primes_checked = 0;
  double envelope = 0.0;  ///< x^{3/4 + 4 eta}
};

/// Primes 3 < p <= x having a nonprincipal chi with chi^{d_p} = chi_0 and
/// |sum_{n<=M} chi(n)| > M^{1 - eta}.
CensusResult garaev_census(std::int64_t x, std::int64_t M, double eta);

struct ErrorBounds {
  double e1 = 0.0;
  double e2 = 0.0;
};

/// The two error functionals of the box-counting estimate, o(1) factors set
/// to 1 and natural logarithms throughout.
ErrorBounds error_bounds(std::int64_t p, std::int64_t A, std::int64_t B, double sigma, double rho);

}  // namespace ellstat
