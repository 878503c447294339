#include "ellstat/isoclasses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace ellstat {

namespace {

// Visits (r u^4, s u^6) for u = g^k, k = 0 .. p-2. Members repeat when the
// stabilizer of (r, s) is nontrivial.
template <typename Visit>
void for_each_orbit_step(const PrimeContext& ctx, Residue r, Residue s, Visit&& visit) {
  const std::uint32_t n = ctx.p() - 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    const Residue u4 = ctx.pow_g(static_cast<std::uint32_t>((4ull * k) % n));
    const Residue u6 = ctx.pow_g(static_cast<std::uint32_t>((6ull * k) % n));
    visit(ctx.mul(r, u4), ctx.mul(s, u6));
  }
}

}  // namespace

void ClassTable::enumerate_orbits() {
  const Residue p = ctx_.p();
  lookup_.assign(static_cast<std::size_t>(p) * p, kSingular);
  std::vector<bool> visited(static_cast<std::size_t>(p) * p, false);
  classes_.clear();
  for (Residue a = 0; a < p; ++a) {
    for (Residue b = 0; b < p; ++b) {
      const std::size_t at = static_cast<std::size_t>(a) * p + b;
      if (visited[at] || is_singular(ctx_, a, b)) continue;
      ClassInfo info;
      info.id = static_cast<ClassId>(classes_.size());
      info.r = a;
      info.s = b;
      for_each_orbit_step(ctx_, a, b, [&](Residue x, Residue y) {
        const std::size_t i = static_cast<std::size_t>(x) * p + y;
        if (visited[i]) return;
        visited[i] = true;
        lookup_[i] = static_cast<std::int32_t>(info.id);
        ++info.orbit_size;
      });
      classes_.push_back(info);
    }
  }
}

ClassTable build_class_table(const PrimeContext& ctx) {
  if (ctx.p() > kMaxClassTablePrime)
    throw Error(ErrorCode::CapacityExceeded,
                "class tables are limited to p <= " + std::to_string(kMaxClassTablePrime));
  ClassTable table(ctx);
  table.enumerate_orbits();
  for (auto& c : table.classes_) c.stats = curve_stats(table.ctx_, c.r, c.s);
  return table;
}

ClassTable ClassTable::from_rows(PrimeContext ctx, const std::vector<ClassRow>& rows) {
  ClassTable table(std::move(ctx));
  table.enumerate_orbits();
  const auto& c = table.ctx_;
  const auto p = static_cast<std::int64_t>(c.p());
  if (rows.size() != table.classes_.size())
    throw Error(ErrorCode::CorruptCache, "class count mismatch for p = " + std::to_string(p));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    auto& info = table.classes_[i];
    if (row.id != info.id || row.r != info.r || row.s != info.s ||
        row.orbit_size != info.orbit_size)
      throw Error(ErrorCode::CorruptCache,
                  "row " + std::to_string(i) + " disagrees with the orbit enumeration");
    if (std::abs(row.trace) * std::abs(row.trace) > 4 * p || row.n1 * row.n2 != p + 1 - row.trace)
      throw Error(ErrorCode::CorruptCache, "row " + std::to_string(i) + " has invalid statistics");
    info.stats.a = row.r;
    info.stats.b = row.s;
    info.stats.trace = row.trace;
    info.stats.order = p + 1 - row.trace;
    info.stats.angle = sato_tate_angle(p, row.trace);
    info.stats.group = {row.n1, row.n2};
  }
  return table;
}

std::vector<ClassRow> ClassTable::rows() const {
  std::vector<ClassRow> out;
  out.reserve(classes_.size());
  for (const auto& c : classes_)
    out.push_back({c.id, c.r, c.s, c.orbit_size, c.stats.trace, c.stats.group.n1, c.stats.group.n2});
  return out;
}

std::vector<std::pair<Residue, Residue>> ClassTable::orbit(ClassId id) const {
  const auto& c = classes_.at(id);
  std::vector<std::pair<Residue, Residue>> out;
  for_each_orbit_step(ctx_, c.r, c.s, [&](Residue x, Residue y) {
    if (std::find(out.begin(), out.end(), std::pair{x, y}) == out.end()) out.emplace_back(x, y);
  });
  return out;
}

ClassId classify(const ClassTable& table, Residue a, Residue b) {
  const auto p = table.p();
  if (a >= p || b >= p)
    throw Error(ErrorCode::InvalidArgument, "residues must be reduced mod p");
  const auto id = table.lookup(a, b);
  if (id == ClassTable::kSingular)
    throw Error(ErrorCode::SingularCurve, "(" + std::to_string(a) + ", " + std::to_string(b) +
                                              ") is singular mod " + std::to_string(p));
  return static_cast<ClassId>(id);
}

std::int64_t min_weierstrass(const ClassTable& table, ClassId id) {
  const auto& c = table.classes().at(id);
  if (c.special())
    throw Error(ErrorCode::UndefinedForSpecialClass,
                "class " + std::to_string(id) + " lies in a = 0 or b = 0");
  std::int64_t best = table.p();
  for (auto [a, b] : table.orbit(id)) best = std::min<std::int64_t>(best, std::max(a, b));
  return best;
}

std::vector<std::int64_t> z_set_counts(const PrimeContext& ctx, Residue s) {
  if (s % ctx.p() == 0) throw Error(ErrorCode::InvalidArgument, "s must be a unit");
  const Residue p = ctx.p();
  const Residue half = (p - 1) / 2;
  std::vector<std::int64_t> hits(half + 1, 0);
  for (Residue u = 1; u < p; ++u) {
    const Residue u2 = ctx.mul(u, u);
    const Residue v = ctx.mul(s, ctx.mul(u2, ctx.mul(u2, u2)));
    ++hits[static_cast<std::size_t>(std::llabs(ctx.signed_rep(v)))];
  }
  // hits[0] stays 0 since s u^6 is a unit.
  for (std::size_t B = 1; B < hits.size(); ++B) hits[B] += hits[B - 1];
  return hits;
}

std::int64_t z_set_count(const PrimeContext& ctx, Residue s, std::int64_t B) {
  if (B < 0) throw Error(ErrorCode::InvalidArgument, "B must be non-negative");
  const auto counts = z_set_counts(ctx, s);
  return counts[static_cast<std::size_t>(std::min<std::int64_t>(B, counts.size() - 1))];
}

std::int64_t zrs_count(const PrimeContext& ctx, Residue r, Residue s, std::int64_t A,
                       std::int64_t B) {
  if (s % ctx.p() == 0) throw Error(ErrorCode::InvalidArgument, "s must be a unit");
  const Residue p = ctx.p();
  std::int64_t count = 0;
  for (Residue u = 1; u < p; ++u) {
    const Residue u2 = ctx.mul(u, u);
    const Residue u4 = ctx.mul(u2, u2);
    if (std::llabs(ctx.signed_rep(ctx.mul(s, ctx.mul(u4, u2)))) > B) continue;
    if (std::llabs(ctx.signed_rep(ctx.mul(r % p, u4))) > A) continue;
    ++count;
  }
  return count;
}

double zrs_deviation(const PrimeContext& ctx, Residue s, std::int64_t A, std::int64_t B) {
  const Residue p = ctx.p();
  // Collect u^4 over Z_s(B; p); then #Z_{r,s} counts those with |r u^4| <= A.
  std::vector<Residue> fourth_powers;
  for (Residue u = 1; u < p; ++u) {
    const Residue u2 = ctx.mul(u, u);
    const Residue u4 = ctx.mul(u2, u2);
    if (std::llabs(ctx.signed_rep(ctx.mul(s, ctx.mul(u4, u2)))) <= B) fourth_powers.push_back(u4);
  }
  const double z = static_cast<double>(fourth_powers.size());
  const double mean = 2.0 * static_cast<double>(A) * z / static_cast<double>(p);
  double total = 0.0;
  for (Residue r = 0; r < p; ++r) {
    std::int64_t hits = 0;
    for (auto u4 : fourth_powers)
      if (std::llabs(ctx.signed_rep(ctx.mul(r, u4))) <= A) ++hits;
    total += std::abs(static_cast<double>(hits) - mean);
  }
  return total;
}

std::int64_t quadratic_window_count(const PrimeContext& ctx, std::int64_t B, bool residues) {
  const std::int64_t half = (ctx.p() - 1) / 2;
  const int want = residues ? 1 : -1;
  std::int64_t count = 0;
  for (std::int64_t b = 1; b <= std::min(B, half); ++b) {
    if (ctx.qr(ctx.reduce(b)) == want) ++count;
    if (ctx.qr(ctx.reduce(-b)) == want) ++count;
  }
  return count;
}

void validate(const BoxSpec& box) {
  if (box.A < 1 || box.B < 1)
    throw Error(ErrorCode::InvalidArgument, "box half-widths A and B must be at least 1");
}

std::vector<std::int64_t> residue_multiplicities(std::int64_t lo, std::int64_t hi, Residue p) {
  std::vector<std::int64_t> mult(p, 0);
  if (hi < lo) return mult;
  const std::int64_t len = hi - lo + 1;
  const std::int64_t full = len / p;
  const std::int64_t extra = len % p;
  for (auto& m : mult) m = full;
  const std::int64_t P = p;
  std::int64_t r = ((lo % P) + P) % P;
  for (std::int64_t i = 0; i < extra; ++i) {
    ++mult[static_cast<std::size_t>(r)];
    if (++r == P) r = 0;
  }
  return mult;
}

BoxCount m_p_count(const ClassTable& table, const ClassPredicate& predicate, const BoxSpec& box) {
  validate(box);
  const Residue p = table.p();
  std::vector<char> selected(table.class_count(), 0);
  BoxCount out;
  for (const auto& c : table.classes()) {
    if (!predicate(c)) continue;
    selected[c.id] = 1;
    out.member_pairs += c.orbit_size;
  }
  const auto ma = residue_multiplicities(box.a_lo(), box.a_hi(), p);
  const auto mb = residue_multiplicities(box.b_lo(), box.b_hi(), p);
  for (Residue a = 0; a < p; ++a) {
    if (ma[a] == 0) continue;
    for (Residue b = 0; b < p; ++b) {
      if (mb[b] == 0) continue;
      const std::int64_t weight = ma[a] * mb[b];
      const auto id = table.lookup(a, b);
      if (id == ClassTable::kSingular) {
        out.singular += weight;
        continue;
      }
      out.nonsingular += weight;
      if (selected[static_cast<std::size_t>(id)]) out.count += weight;
    }
  }
  const double pp = static_cast<double>(p);
  out.expected = 4.0 * static_cast<double>(box.A) * static_cast<double>(box.B) *
                 static_cast<double>(out.member_pairs) / (pp * pp);
  out.deviation = std::abs(static_cast<double>(out.count) - out.expected);
  return out;
}

}  // namespace ellstat
