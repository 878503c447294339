#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ellstat {

/// Exact rational in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// A real constant with a rigorous bound on |value - true value|.
struct DensityValue {
  double value = 0.0;
  double abs_error = 0.0;
};

/// (2/pi) * integral of sin^2 over [alpha, beta]. Throws InvalidInterval
/// unless 0 <= alpha < beta <= pi.
double mu_st(double alpha, double beta);

/// Product over primes q | p - 1 of (1 - 1/(q(q^2 - 1))).
Rational vartheta_p(std::int64_t p);

/// Product over all primes q of (1 - 1/(q(q-1)(q^2-1))), truncated so that
/// the neglected tail is below eps.
DensityValue big_theta(double eps);

/// The same product truncated at primes q <= Q, without error analysis.
double big_theta_truncated(std::int64_t Q);

/// The multiplicative weight attached to m | #E for primes p = k (mod mu(m)).
/// Throws InvalidM for m < 1.
Rational omega_k(std::int64_t k, std::int64_t m);

/// Product over q^j || m of q^{ceil(j/2)}.
std::int64_t mu_of_m(std::int64_t m);

/// Average of omega_k(m) over k in (Z/mu(m))*.
Rational omega_avg(std::int64_t m);

/// Lang-Trotter average constant for trace t != 0. Throws ZeroTrace.
DensityValue c_t(std::int64_t t, double eps);

/// Main-term constant for the averaged count of supersingular primes: pi/3.
double fouvry_murty_constant();

std::int64_t euler_phi(std::int64_t n);

}  // namespace ellstat
