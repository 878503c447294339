#pragma once

// Brute-force reference computations used by the tests. They deliberately
// avoid the library's tables: plain modular arithmetic, direct enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

inline std::int64_t mod(std::int64_t a, std::int64_t p) {
  const std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

inline std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  a = mod(a, p);
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline bool singular(std::int64_t p, std::int64_t a, std::int64_t b) {
  return mod(4 * a * a % p * a + 27 * b * b, p) == 0;
}

inline std::int64_t signed_rep(std::int64_t n, std::int64_t p) {
  n = mod(n, p);
  return n > (p - 1) / 2 ? n - p : n;
}

struct Pt {
  std::int64_t x, y;
  bool inf;
  bool operator==(const Pt& o) const {
    return inf == o.inf && (inf || (x == o.x && y == o.y));
  }
};

// Affine addition written out from the chord-tangent formulas.
inline Pt add(const Pt& P, const Pt& Q, std::int64_t a, std::int64_t p) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  std::int64_t lam;
  if (P.x == Q.x) {
    if (mod(P.y + Q.y, p) == 0) return {0, 0, true};
    lam = mod(3 * P.x * P.x + a, p) * powmod(2 * P.y, p - 2, p) % p;
  } else {
    lam = mod(Q.y - P.y, p) * powmod(Q.x - P.x, p - 2, p) % p;
  }
  const std::int64_t x3 = mod(lam * lam - P.x - Q.x, p);
  return {x3, mod(lam * (P.x - x3) - P.y, p), false};
}

inline std::vector<Pt> points(std::int64_t p, std::int64_t a, std::int64_t b) {
  std::vector<Pt> out{{0, 0, true}};
  for (std::int64_t x = 0; x < p; ++x)
    for (std::int64_t y = 0; y < p; ++y)
      if (mod(y * y - (x * x * x + a * x + b), p) == 0) out.push_back({x, y, false});
  return out;
}

// (n1, n2) with n2 the largest point order, found by repeated addition.
inline std::pair<std::int64_t, std::int64_t> group(std::int64_t p, std::int64_t a, std::int64_t b) {
  const auto pts = points(p, a, b);
  std::int64_t exponent = 1;
  for (const auto& P : pts) {
    std::int64_t k = 1;
    Pt Q = P;
    while (!Q.inf) {
      Q = add(Q, P, a, p);
      ++k;
    }
    if (P.inf) k = 1;
    exponent = std::max(exponent, k);
  }
  const auto N = static_cast<std::int64_t>(pts.size());
  return {N / exponent, exponent};
}

inline std::int64_t trace(std::int64_t p, std::int64_t a, std::int64_t b) {
  return p + 1 - static_cast<std::int64_t>(points(p, a, b).size());
}

// Isomorphism classes by closing each pair under (a, b) -> (a u^4, b u^6).
inline std::vector<std::set<std::pair<std::int64_t, std::int64_t>>> classes(std::int64_t p) {
  std::vector<std::set<std::pair<std::int64_t, std::int64_t>>> out;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < p; ++b) {
      if (singular(p, a, b) || seen.count({a, b})) continue;
      std::set<std::pair<std::int64_t, std::int64_t>> orbit;
      for (std::int64_t u = 1; u < p; ++u)
        orbit.insert({a * powmod(u, 4, p) % p, b * powmod(u, 6, p) % p});
      seen.insert(orbit.begin(), orbit.end());
      out.push_back(orbit);
    }
  return out;
}

// Sato-Tate measure of [alpha, beta].
inline double st_measure(double alpha, double beta) {
  const double pi = std::acos(-1.0);
  return (beta - alpha) / pi - (std::sin(2 * beta) - std::sin(2 * alpha)) / (2 * pi);
}

// Discrepancy by trying every interval whose ends are sample angles, 0 or pi,
// each taken closed or pushed just inside to make it open.
inline double discrepancy(const std::vector<double>& angles, std::int64_t p) {
  const double pi = std::acos(-1.0);
  std::vector<double> ends{0.0, pi};
  for (double a : angles) ends.push_back(a);
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  const double p2 = static_cast<double>(p * p);
  const double tiny = 1e-12;
  double best = 0.0;
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = i; j < ends.size(); ++j)
      for (int open_lo = 0; open_lo < 2; ++open_lo)
        for (int open_hi = 0; open_hi < 2; ++open_hi) {
          const double lo = ends[i], hi = ends[j];
          std::int64_t count = 0;
          for (double a : angles) {
            const bool above = open_lo ? a > lo + tiny : a >= lo - tiny;
            const bool below = open_hi ? a < hi - tiny : a <= hi + tiny;
            if (above && below) ++count;
          }
          // A closed point interval is the limit of [lo, lo + delta].
          if (hi == lo && (open_lo || open_hi)) continue;
          best = std::max(best, std::abs(static_cast<double>(count) - st_measure(lo, hi) * p2));
        }
  return best;
}

}  // namespace oracle
