#include "ellstat/curves.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ellstat {

namespace {

[[noreturn]] void throw_singular(const PrimeContext& ctx, Residue a, Residue b) {
  throw Error(ErrorCode::SingularCurve, "4a^3 + 27b^2 = 0 mod " + std::to_string(ctx.p()) +
                                            " for (a, b) = (" + std::to_string(a) + ", " +
                                            std::to_string(b) + ")");
}

Residue rhs(const PrimeContext& ctx, Residue a, Residue b, Residue x) {
  return ctx.add(ctx.mul(ctx.add(ctx.mul(x, x), a), x), b);
}

}  // namespace

bool is_singular(const PrimeContext& ctx, Residue a, Residue b) {
  const Residue a3 = ctx.mul(ctx.mul(a, a), a);
  const Residue b2 = ctx.mul(b, b);
  return ctx.add(ctx.mul(4 % ctx.p(), a3), ctx.mul(27 % ctx.p(), b2)) == 0;
}

std::int64_t legendre_sum(const PrimeContext& ctx, Residue a, Residue b) {
  const auto& qr = ctx.qr_table();
  const Residue p = ctx.p();
  std::int64_t sum = 0;
  for (Residue x = 0; x < p; ++x) sum += qr[rhs(ctx, a, b, x)];
  return sum;
}

double sato_tate_angle(std::int64_t p, std::int64_t trace) {
  double c = static_cast<double>(trace) / (2.0 * std::sqrt(static_cast<double>(p)));
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

std::int64_t order_by_enumeration(const PrimeContext& ctx, Residue a, Residue b) {
  if (is_singular(ctx, a, b)) throw_singular(ctx, a, b);
  const Residue p = ctx.p();
  std::int64_t count = 1;
  for (Residue x = 0; x < p; ++x) {
    const Residue r = rhs(ctx, a, b, x);
    for (Residue y = 0; y < p; ++y)
      if (ctx.mul(y, y) == r) ++count;
  }
  return count;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool CurveArithmetic::on_curve(const Point& P) const {
  if (P.infinity) return true;
  return ctx_.mul(P.y, P.y) == rhs(ctx_, a_, b_, P.x);
}

CurveArithmetic::Point CurveArithmetic::negate(const Point& P) const {
  if (P.infinity) return P;
  return affine(P.x, ctx_.neg(P.y));
}

CurveArithmetic::Point CurveArithmetic::dbl(const Point& P) const {
  if (P.infinity || P.y == 0) return identity();
  // lambda = (3x^2 + a) / 2y
  const Residue num = ctx_.add(ctx_.mul(3, ctx_.mul(P.x, P.x)), a_);
  const Residue lambda = ctx_.mul(num, ctx_.inv(ctx_.add(P.y, P.y)));
  const Residue x3 = ctx_.sub(ctx_.mul(lambda, lambda), ctx_.add(P.x, P.x));
  const Residue y3 = ctx_.sub(ctx_.mul(lambda, ctx_.sub(P.x, x3)), P.y);
  return affine(x3, y3);
}

CurveArithmetic::Point CurveArithmetic::add(const Point& P, const Point& Q) const {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  if (P.x == Q.x) {
    if (P.y == Q.y) return dbl(P);
    return identity();
  }
  const Residue lambda = ctx_.mul(ctx_.sub(Q.y, P.y), ctx_.inv(ctx_.sub(Q.x, P.x)));
  const Residue x3 = ctx_.sub(ctx_.sub(ctx_.mul(lambda, lambda), P.x), Q.x);
  const Residue y3 = ctx_.sub(ctx_.mul(lambda, ctx_.sub(P.x, x3)), P.y);
  return affine(x3, y3);
}

CurveArithmetic::Point CurveArithmetic::multiply(const Point& P, std::uint64_t k) const {
  Point acc = identity();
  Point base = P;
  while (k) {
    if (k & 1) acc = add(acc, base);
    k >>= 1;
    if (k) base = dbl(base);
  }
  return acc;
}

std::uint64_t CurveArithmetic::order_of(const Point& P, std::uint64_t multiple) const {
  std::uint64_t order = multiple;
  for (auto [q, e] : factorize(multiple)) {
    for (int i = 0; i < e; ++i) {
      if (!multiply(P, order / q).infinity) break;
      order /= q;
    }
  }
  return order;
}

std::vector<CurveArithmetic::Point> CurveArithmetic::points() const {
  std::vector<Point> out;
  for (Residue x = 0; x < ctx_.p(); ++x) {
    const Residue r = rhs(ctx_, a_, b_, x);
    if (r == 0) {
      out.push_back(affine(x, 0));
    } else if (ctx_.qr(r) == 1) {
      const Residue y = ctx_.sqrt(r);
      const Residue y2 = ctx_.neg(y);
      out.push_back(affine(x, std::min(y, y2)));
      out.push_back(affine(x, std::max(y, y2)));
    }
  }
  return out;
}

GroupStructure group_structure(const PrimeContext& ctx, Residue a, Residue b, std::int64_t order) {
  if (is_singular(ctx, a, b)) throw_singular(ctx, a, b);
  const auto N = static_cast<std::uint64_t>(order);
  const std::uint64_t g = std::gcd(N, std::uint64_t{ctx.p() - 1});

  // n1 | gcd(N, p-1) and n1^2 | N, so n2 = N / d for one of these d.
  std::vector<std::uint64_t> candidates;
  for (std::uint64_t d = 1; d <= g; ++d)
    if (g % d == 0 && N % (d * d) == 0) candidates.push_back(N / d);
  if (candidates.size() == 1) return {1, order};

  auto settled = [&](std::uint64_t L) {
    for (auto c : candidates)
      if (c != L && c % L == 0) return false;
    return true;
  };

  const CurveArithmetic E(ctx, a, b);
  std::uint64_t L = 1;
  // P and -P share an order, so one point per x suffices.
  for (Residue x = 0; x < ctx.p(); ++x) {
    const Residue r = rhs(ctx, a, b, x);
    if (r != 0 && ctx.qr(r) != 1) continue;
    const auto P = CurveArithmetic::affine(x, ctx.sqrt(r));
    if (!E.multiply(P, L).infinity) L = std::lcm(L, E.order_of(P, N));
    if (settled(L)) break;
  }
  return {static_cast<std::int64_t>(N / L), static_cast<std::int64_t>(L)};
}

GroupStructure group_structure(const PrimeContext& ctx, Residue a, Residue b) {
  if (is_singular(ctx, a, b)) throw_singular(ctx, a, b);
  return group_structure(ctx, a, b, ctx.p() + 1 + legendre_sum(ctx, a, b));
}

CurveStats curve_stats(const PrimeContext& ctx, Residue a, Residue b) {
  if (is_singular(ctx, a, b)) throw_singular(ctx, a, b);
  CurveStats s;
  s.a = a;
  s.b = b;
  s.order = static_cast<std::int64_t>(ctx.p()) + 1 + legendre_sum(ctx, a, b);
  s.trace = static_cast<std::int64_t>(ctx.p()) + 1 - s.order;
  s.angle = sato_tate_angle(ctx.p(), s.trace);
  s.group = group_structure(ctx, a, b, s.order);
  const std::int64_t p = ctx.p();
  if (s.trace * s.trace > 4 * p || s.group.n1 * s.group.n2 != s.order ||
      s.group.n2 % s.group.n1 != 0 || (p - 1) % s.group.n1 != 0)
    throw std::logic_error("curve invariants violated for (" + std::to_string(a) + ", " +
                           std::to_string(b) + ") mod " + std::to_string(p));
  return s;
}

}  // namespace ellstat
