#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ellstat/curves.hpp"
#include "ellstat/ffield.hpp"

namespace ellstat {

using ClassId = std::uint32_t;

/// One F_p-isomorphism class {(r u^4, s u^6) : u in F_p*}.
struct ClassInfo {
  ClassId id = 0;
  Residue r = 0;  ///< lexicographically smallest member
  Residue s = 0;
  std::uint32_t orbit_size = 0;
  CurveStats stats;

  bool special() const { return r == 0 || s == 0; }  ///< orbit lies in a = 0 or b = 0
};

/// Stored row of a class, enough to rebuild a table without recounting points.
struct ClassRow {
  ClassId id = 0;
  Residue r = 0;
  Residue s = 0;
  std::uint32_t orbit_size = 0;
  std::int64_t trace = 0;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  friend bool operator==(const ClassRow&, const ClassRow&) = default;
};

/// Largest prime for which a full class table (p^2 lookup entries) is built.
inline constexpr std::int64_t kMaxClassTablePrime = 8192;

/// All isomorphism classes of nonsingular short Weierstrass curves over F_p,
/// with a residue-pair lookup. Immutable after construction.
class ClassTable {
 public:
  static constexpr std::int32_t kSingular = -1;

  const PrimeContext& context() const { return ctx_; }
  Residue p() const { return ctx_.p(); }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  const ClassInfo& operator[](ClassId id) const { return classes_[id]; }

  /// Class index of (a, b), or kSingular.
  std::int32_t lookup(Residue a, Residue b) const {
    return lookup_[static_cast<std::size_t>(a) * ctx_.p() + b];
  }

  std::vector<ClassRow> rows() const;
  /// Members of a class, in the order produced by u = g^0, g^1, ...
  std::vector<std::pair<Residue, Residue>> orbit(ClassId id) const;

  /// Rebuild from stored rows. Orbits are re-enumerated and checked against
  /// the stored sizes; per-curve statistics are taken from the rows.
  static ClassTable from_rows(PrimeContext ctx, const std::vector<ClassRow>& rows);

 private:
  friend ClassTable build_class_table(const PrimeContext& ctx);
  explicit ClassTable(PrimeContext ctx) : ctx_(std::move(ctx)) {}
  void enumerate_orbits();

  PrimeContext ctx_;
  std::vector<ClassInfo> classes_;
  std::vector<std::int32_t> lookup_;
};

/// Partitions the p^2 - p nonsingular pairs into orbits and computes the
/// statistics of each class once, on its representative.
ClassTable build_class_table(const PrimeContext& ctx);

/// Throws SingularCurve.
ClassId classify(const ClassTable& table, Residue a, Residue b);

/// mu(E): the least max(a, b) over members with 1 <= a, b < p.
/// Throws UndefinedForSpecialClass when the orbit lies in a = 0 or b = 0.
std::int64_t min_weierstrass(const ClassTable& table, ClassId id);

/// #{u in F_p* : s u^6 = b mod p for some |b| <= B} (b as a signed residue).
std::int64_t z_set_count(const PrimeContext& ctx, Residue s, std::int64_t B);

/// #Z_s(B; p) for every B = 0 .. (p-1)/2 in one pass.
std::vector<std::int64_t> z_set_counts(const PrimeContext& ctx, Residue s);

/// #{u in Z_s(B; p) : r u^4 = a mod p for some |a| <= A}.
std::int64_t zrs_count(const PrimeContext& ctx, Residue r, Residue s, std::int64_t A,
                       std::int64_t B);

/// Sum over r in F_p of |#Z_{r,s}(A,B;p) - 2A #Z_s(B;p) / p|.
double zrs_deviation(const PrimeContext& ctx, Residue s, std::int64_t A, std::int64_t B);

/// Number of quadratic residues (residues = true) or non-residues in the
/// signed window 1 <= |b| <= B.
std::int64_t quadratic_window_count(const PrimeContext& ctx, std::int64_t B, bool residues);

/// Integer coefficient box: a = shiftA + i with |i| <= A, b = shiftB + j with |j| <= B.
struct BoxSpec {
  std::int64_t A = 1;
  std::int64_t B = 1;
  std::int64_t shiftA = 0;
  std::int64_t shiftB = 0;

  std::int64_t a_lo() const { return shiftA - A; }
  std::int64_t a_hi() const { return shiftA + A; }
  std::int64_t b_lo() const { return shiftB - B; }
  std::int64_t b_hi() const { return shiftB + B; }
};

/// Throws InvalidArgument unless A, B >= 1.
void validate(const BoxSpec& box);

/// For each residue r mod p, the number of integers in [lo, hi] congruent to r.
std::vector<std::int64_t> residue_multiplicities(std::int64_t lo, std::int64_t hi, Residue p);

using ClassPredicate = std::function<bool(const ClassInfo&)>;

struct BoxCount {
  std::int64_t count = 0;             ///< M_p(S, A, B)
  std::int64_t nonsingular = 0;       ///< box pairs with a nonsingular reduction
  std::int64_t singular = 0;          ///< box pairs skipped as singular
  std::int64_t member_pairs = 0;      ///< #S, residue pairs in the selected classes
  double expected = 0.0;              ///< 4AB #S / p^2
  double deviation = 0.0;             ///< |count - expected|
};

/// Counts integer pairs of the box whose reduction mod p is nonsingular and
/// lies in a class accepted by the predicate. Integers congruent mod p are
/// counted separately.
BoxCount m_p_count(const ClassTable& table, const ClassPredicate& predicate, const BoxSpec& box);

}  // namespace ellstat
