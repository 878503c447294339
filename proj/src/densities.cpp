#include "ellstat/densities.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ellstat/curves.hpp"
#include "ellstat/error.hpp"
#include "ellstat/ffield.hpp"

namespace ellstat {

namespace {

// Products are accumulated in long double; each factor costs a few roundings
// of this size, and the final conversion to double one more of kUnitRoundoff.
constexpr double kWideRoundoff = std::numeric_limits<long double>::epsilon() / 2;
constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;
constexpr std::int64_t kMaxEulerCutoff = 100'000'000;

BigInt big_pow(std::int64_t base, std::int64_t e) {
  BigInt r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= base;
  return r;
}

Rational ratio(const BigInt& num, const BigInt& den) { return Rational(num, den); }

std::int64_t positive_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

double mu_st(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha < beta && beta <= std::numbers::pi))
    throw Error(ErrorCode::InvalidInterval, "need 0 <= alpha < beta <= pi");
  return (beta - alpha) / std::numbers::pi -
         (std::sin(2.0 * beta) - std::sin(2.0 * alpha)) / (2.0 * std::numbers::pi);
}

Rational vartheta_p(std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  Rational out = 1;
  for (auto [q, e] : factorize(static_cast<std::uint64_t>(p - 1))) {
    const BigInt Q = static_cast<std::int64_t>(q);
    out *= Rational(1) - ratio(1, Q * (Q * Q - 1));
  }
  return out;
}

double big_theta_truncated(std::int64_t Q) {
  double prod = 1.0;
  for (auto q : prime_list(Q)) {
    const double d = static_cast<double>(q);
    prod *= 1.0 - 1.0 / (d * (d - 1.0) * (d * d - 1.0));
  }
  return prod;
}

DensityValue big_theta(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  // Each factor with q >= 3 is 1 - delta, delta <= 2/q^4 <= 1/48, so the
  // neglected log-tail is at most 1.03 * sum_{n>Q} 2/n^4 <= 0.69 / Q^3.
  // Half of eps goes to the tail, the rest covers rounding.
  std::int64_t Q = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(std::cbrt(1.38 / eps))));
  if (Q > kMaxEulerCutoff) throw Error(ErrorCode::InvalidArgument, "eps too small");
  const auto primes = prime_list(Q);
  long double prod = 1.0L;
  for (auto q : primes) {
    const long double d = static_cast<long double>(q);
    prod *= 1.0L - 1.0L / (d * (d - 1.0L) * (d * d - 1.0L));
  }
  const double Qd = static_cast<double>(Q);
  const double tail = 0.69 / (Qd * Qd * Qd);
  const double rounding = 8.0 * kWideRoundoff * static_cast<double>(primes.size() + 1) + kUnitRoundoff;
  const double value = static_cast<double>(prod);
  return {value, value * tail + rounding};
}

std::int64_t mu_of_m(std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidM, "m must be at least 1");
  std::int64_t mu = 1;
  for (auto [q, j] : factorize(static_cast<std::uint64_t>(m)))
    for (int i = 0; i < (j + 1) / 2; ++i) mu *= static_cast<std::int64_t>(q);
  return mu;
}

Rational omega_k(std::int64_t k, std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidM, "m must be at least 1");
  Rational out = 1;
  for (auto [uq, j] : factorize(static_cast<std::uint64_t>(m))) {
    const auto q = static_cast<std::int64_t>(uq);
    const int up = (j + 1) / 2;
    const int down = j / 2;
    std::int64_t modulus = 1;
    for (int i = 0; i < up; ++i) modulus *= q;
    if (positive_mod(k - 1, modulus) != 0) {
      out *= ratio(1, big_pow(q, j - 1) * (q - 1));
    } else {
      const BigInt num = big_pow(q, down + 1) + big_pow(q, down) - 1;
      const BigInt den = big_pow(q, j + down - 1) * (BigInt(q) * q - 1);
      out *= ratio(num, den);
    }
  }
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "phi needs n >= 1");
  std::int64_t out = n;
  for (auto [q, e] : factorize(static_cast<std::uint64_t>(n)))
    out = out / static_cast<std::int64_t>(q) * (static_cast<std::int64_t>(q) - 1);
  return out;
}

Rational omega_avg(std::int64_t m) {
  const std::int64_t mu = mu_of_m(m);
  Rational sum = 0;
  for (std::int64_t k = 1; k <= mu; ++k)
    if (std::gcd(k, mu) == 1) sum += omega_k(k, m);
  return sum / euler_phi(mu);
}

DensityValue c_t(std::int64_t t, double eps) {
  if (t == 0) throw Error(ErrorCode::ZeroTrace, "t = 0 uses the supersingular constant pi/3");
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  const auto t_abs = static_cast<std::uint64_t>(t < 0 ? -t : t);
  const auto t_factors = factorize(t_abs);
  auto divides_t = [&](std::int64_t q) { return t_abs % static_cast<std::uint64_t>(q) == 0; };

  // Generic factor 1 - 1/((q-1)^2 (q+1)) with delta <= 2/q^3 <= 2/27 for q >= 3,
  // so the log-tail past Q is at most 1.08 * sum_{n>Q} 2/n^3 <= 1.08 / Q^2.
  // The whole product is below (2/pi) zeta(2) < 1.1.
  std::int64_t Q = std::max<std::int64_t>(
      2, static_cast<std::int64_t>(std::ceil(std::sqrt(2.0 * 1.08 * 1.1 / eps))));
  if (Q > kMaxEulerCutoff) throw Error(ErrorCode::InvalidArgument, "eps too small");

  long double prod = 2.0L / std::numbers::pi_v<long double>;
  std::size_t terms = 1;
  for (auto [uq, e] : t_factors) {
    const long double q = static_cast<long double>(uq);
    prod /= 1.0L - 1.0L / (q * q);
    ++terms;
  }
  for (auto q : prime_list(Q)) {
    if (divides_t(q)) continue;
    const long double d = static_cast<long double>(q);
    prod *= d * (d * d - d - 1.0L) / ((d - 1.0L) * (d * d - 1.0L));
    ++terms;
  }
  const double Qd = static_cast<double>(Q);
  const double tail = 1.08 / (Qd * Qd);
  const double value = static_cast<double>(prod);
  return {value, value * (tail + 8.0 * kWideRoundoff * static_cast<double>(terms) + kUnitRoundoff)};
}

double fouvry_murty_constant() { return std::numbers::pi / 3.0; }

}  // namespace ellstat
