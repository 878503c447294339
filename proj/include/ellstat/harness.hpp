#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ellstat/isoclasses.hpp"

namespace ellstat {

/// Per-prime statistics over pairs (a, b) in F_p* x F_p*, singular pairs excluded.
struct PerPrimeRecord {
  std::int64_t p = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::int64_t pair_count = 0;  ///< (p-1)(p-2): nonsingular pairs with ab != 0
  std::int64_t t_count = 0;     ///< #T_p(alpha, beta)
  std::int64_t c_count = 0;     ///< #C_p
  std::map<std::int64_t, std::int64_t> d_counts;  ///< m -> #D_p(m)
  double discrepancy = 0.0;
  std::map<int, double> katz;  ///< n -> Katz moment
  std::int64_t skipped_singular = 0;
};

/// Counts are accumulated from class statistics weighted by orbit size.
PerPrimeRecord per_prime_counts(const ClassTable& table, double alpha, double beta,
                                const std::vector<std::int64_t>& ms,
                                const std::vector<int>& katz_orders = {});

/// sup over 0 <= alpha < beta <= pi of |#T_p(alpha, beta) - mu_ST(alpha, beta) p^2|.
/// Extremes are attained (or approached) at sample angles and at 0, pi, so a
/// linear scan over the sorted distinct angles is exact.
double st_discrepancy(const ClassTable& table);

/// (1/(p-1)^2) * sum over nonsingular ab != 0 of U_n(cos psi) = sin((n+1)psi)/sin(psi).
/// Terms for t and -t are paired, so odd n gives exactly 0.
double katz_moment(const ClassTable& table, int n);

/// #{(a, b) in F_p* x F_p* nonsingular with trace t}, keyed by t.
std::map<std::int64_t, std::int64_t> trace_histogram(const ClassTable& table);

struct SatoTateStat {
  double alpha = 0.0;
  double beta = 0.0;
};
struct CyclicStat {};
struct DivisibleStat {
  std::int64_t m = 1;
};
struct LangTrotterStat {
  std::int64_t t = 0;
};
/// #E = k (mod m)
struct VarpiOrderStat {
  std::int64_t m = 1;
  std::int64_t k = 0;
};
/// p + 1 - #E = k (mod m)
struct VarpiTraceStat {
  std::int64_t m = 1;
  std::int64_t k = 0;
};

using Statistic = std::variant<SatoTateStat, CyclicStat, DivisibleStat, LangTrotterStat,
                               VarpiOrderStat, VarpiTraceStat>;

/// Throws InvalidInterval / InvalidStatistic on bad parameters.
void validate(const Statistic& stat);
bool satisfies(const Statistic& stat, const CurveStats& curve);
std::string stat_name(const Statistic& stat);

struct SweepConfig {
  std::int64_t x = 5;
  BoxSpec box;
  Statistic stat = CyclicStat{};
  int jobs = 1;
  std::optional<std::filesystem::path> cache_dir;
};

struct PrimeRow {
  std::int64_t p = 0;
  std::int64_t count = 0;
  std::int64_t nonsingular = 0;
  std::int64_t skipped_singular = 0;
  std::int64_t member_pairs = 0;
  double expected = 0.0;  ///< 4AB #S / p^2
};

struct Report {
  SweepConfig config;
  std::vector<PrimeRow> per_prime;
  std::int64_t aggregate = 0;
  std::int64_t prime_count = 0;  ///< pi(x), including 2 and 3
  double density = 0.0;
  std::optional<double> main_term;
  std::optional<double> relative_deviation;
  std::vector<std::string> warnings;
};

/// Sums the box count over primes 3 < p <= x and compares it with the
/// averaged main term. Primes are processed by `jobs` workers and merged in
/// ascending order, so the report does not depend on the schedule.
Report sweep(const SweepConfig& config);

}  // namespace ellstat
