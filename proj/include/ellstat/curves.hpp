#pragma once

#include <cstdint>
#include <vector>

#include "ellstat/ffield.hpp"

namespace ellstat {

/// E(F_p) = Z/n1 x Z/n2 with n1 | n2.
struct GroupStructure {
  std::int64_t n1 = 1;
  std::int64_t n2 = 1;

  bool cyclic() const { return n1 == 1; }
  friend bool operator==(const GroupStructure&, const GroupStructure&) = default;
};

/// Exact statistics of y^2 = x^3 + a x + b over F_p.
struct CurveStats {
  Residue a = 0;
  Residue b = 0;
  std::int64_t trace = 0;  ///< p + 1 - #E(F_p)
  std::int64_t order = 0;  ///< #E(F_p)
  double angle = 0.0;      ///< Sato-Tate angle in [0, pi]
  GroupStructure group;

  bool cyclic() const { return group.cyclic(); }
};

/// True when p divides 4a^3 + 27b^2.
bool is_singular(const PrimeContext& ctx, Residue a, Residue b);

/// Sum over x of chi_2(x^3 + a x + b), so #E = p + 1 + sum. No singularity check.
std::int64_t legendre_sum(const PrimeContext& ctx, Residue a, Residue b);

/// arccos(t / (2 sqrt p)) with the argument clamped to [-1, 1].
double sato_tate_angle(std::int64_t p, std::int64_t trace);

/// Full statistics including group structure. Throws SingularCurve.
CurveStats curve_stats(const PrimeContext& ctx, Residue a, Residue b);

/// Group order by enumerating all (x, y) in F_p^2, plus the point at infinity.
/// Independent of the quadratic-character tables; used as a test oracle.
std::int64_t order_by_enumeration(const PrimeContext& ctx, Residue a, Residue b);

/// Group structure from the exponent of E(F_p): n2 is the lcm of the point
/// orders and n1 = N / n2. Throws SingularCurve.
GroupStructure group_structure(const PrimeContext& ctx, Residue a, Residue b);

/// Same, with the group order already known.
GroupStructure group_structure(const PrimeContext& ctx, Residue a, Residue b, std::int64_t order);

/// Affine point arithmetic on a short Weierstrass curve over F_p.
class CurveArithmetic {
 public:
  struct Point {
    Residue x = 0;
    Residue y = 0;
    bool infinity = true;
    friend bool operator==(const Point&, const Point&) = default;
  };

  CurveArithmetic(const PrimeContext& ctx, Residue a, Residue b) : ctx_(ctx), a_(a), b_(b) {}

  static Point identity() { return {}; }
  static Point affine(Residue x, Residue y) { return {x, y, false}; }

  bool on_curve(const Point& P) const;
  Point negate(const Point& P) const;
  Point add(const Point& P, const Point& Q) const;
  Point dbl(const Point& P) const;
  Point multiply(const Point& P, std::uint64_t k) const;

  /// Order of P, given any multiple of it (normally the group order).
  std::uint64_t order_of(const Point& P, std::uint64_t multiple) const;

  /// All affine points, in increasing x then y.
  std::vector<Point> points() const;

 private:
  const PrimeContext& ctx_;
  Residue a_;
  Residue b_;
};

/// Prime factorization as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

}  // namespace ellstat
