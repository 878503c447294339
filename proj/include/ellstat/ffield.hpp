#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ellstat/error.hpp"

namespace ellstat {

using Residue = std::uint32_t;

/// Largest prime accepted by build_context. Tables are O(p).
inline constexpr std::int64_t kMaxPrime = std::int64_t{1} << 20;

bool is_prime(std::int64_t n);

/// Ascending primes up to x by the sieve of Eratosthenes; pi(x) is the length.
std::vector<std::int64_t> prime_list(std::int64_t x);

/// Tables for one prime p > 3: primitive root, discrete logs, powers of the
/// root, inverses and quadratic characters. Immutable after construction and
/// safe to share read-only between threads.
class PrimeContext {
 public:
  Residue p() const { return p_; }
  Residue g() const { return g_; }
  int d_p() const { return d_p_; }  ///< gcd(p-1, 6)
  int e_p() const { return e_p_; }  ///< gcd(p-1, 4)

  /// Discrete log base g of a unit n, in [0, p-2]. Undefined for n = 0.
  std::uint32_t dlog(Residue n) const { return dlog_[n]; }
  /// g^k for k in [0, p-2].
  Residue pow_g(std::uint32_t k) const { return exp_[k]; }
  /// Quadratic character: +1, -1, or 0 at n = 0.
  int qr(Residue n) const { return qr_[n]; }
  Residue inv(Residue n) const { return exp_[n == 1 ? 0 : (p_ - 1) - dlog_[n]]; }

  Residue add(Residue a, Residue b) const {
    const Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>((std::uint64_t{a} * b) % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const;

  /// Reduce any integer to [0, p).
  Residue reduce(std::int64_t n) const {
    const std::int64_t r = n % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  /// Representative of n in {0, +-1, ..., +-(p-1)/2}.
  std::int64_t signed_rep(Residue n) const {
    return n > (p_ - 1) / 2 ? static_cast<std::int64_t>(n) - p_ : static_cast<std::int64_t>(n);
  }

  /// A square root of a quadratic residue (the one with even discrete log / 2).
  Residue sqrt(Residue n) const {
    return n == 0 ? 0 : exp_[dlog_[n] / 2];
  }

  const std::vector<std::int8_t>& qr_table() const { return qr_; }

 private:
  friend PrimeContext build_context(std::int64_t p);
  PrimeContext() = default;

  Residue p_ = 0;
  Residue g_ = 0;
  int d_p_ = 0;
  int e_p_ = 0;
  std::vector<std::uint32_t> dlog_;
  std::vector<Residue> exp_;
  std::vector<std::int8_t> qr_;
};

/// Throws NotPrime, PrimeTooSmall (p <= 3) or CapacityExceeded (p > 2^20).
PrimeContext build_context(std::int64_t p);

/// Smallest primitive root modulo the prime p.
Residue smallest_primitive_root(std::int64_t p);

/// chi_j(n) = exp(2 pi i j dlog(n) / (p-1)), chi_j(0) = 0.
///
/// Holds a reference to its context; the context must outlive the handle.
class CharacterHandle {
 public:
  CharacterHandle(const PrimeContext& ctx, std::uint32_t index);

  const PrimeContext& context() const { return *ctx_; }
  std::uint32_t index() const { return index_; }
  std::uint32_t order() const { return order_; }
  bool is_principal() const { return index_ == 0; }

  /// Exponent e such that chi(n) = zeta_order^e, for a unit n.
  std::uint32_t exponent(Residue n) const;
  std::complex<double> operator()(std::int64_t n) const;

 private:
  const PrimeContext* ctx_;
  std::uint32_t index_;
  std::uint32_t order_;
  std::uint32_t step_;  // index / gcd(index, p-1)
};

/// Throws IndexOutOfRange unless 0 <= j <= p-2.
CharacterHandle character(const PrimeContext& ctx, std::int64_t j);

/// The nonprincipal characters with chi^d = chi_0, d | p-1: indices k(p-1)/d.
std::vector<CharacterHandle> characters_of_order_dividing(const PrimeContext& ctx, int d);

/// exp(2 pi i k / n), exact at the quarter points.
std::complex<double> root_of_unity(std::uint64_t k, std::uint64_t n);

}  // namespace ellstat
