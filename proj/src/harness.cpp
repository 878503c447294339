#include "ellstat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "ellstat/cache.hpp"
#include "ellstat/densities.hpp"

namespace ellstat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// mu_ST(0, theta) * p^2
double st_mass(double theta, double p2) {
  if (theta <= 0.0) return 0.0;
  return p2 * (theta / std::numbers::pi - std::sin(2.0 * theta) / (2.0 * std::numbers::pi));
}

}  // namespace

std::map<std::int64_t, std::int64_t> trace_histogram(const ClassTable& table) {
  std::map<std::int64_t, std::int64_t> hist;
  for (const auto& c : table.classes())
    if (!c.special()) hist[c.stats.trace] += c.orbit_size;
  return hist;
}

PerPrimeRecord per_prime_counts(const ClassTable& table, double alpha, double beta,
                                const std::vector<std::int64_t>& ms,
                                const std::vector<int>& katz_orders) {
  mu_st(alpha, beta);  // validates the interval
  for (auto m : ms)
    if (m < 1) throw Error(ErrorCode::InvalidM, "m must be at least 1");

  const std::int64_t p = table.p();
  PerPrimeRecord rec;
  rec.p = p;
  rec.alpha = alpha;
  rec.beta = beta;
  for (auto m : ms) rec.d_counts[m] = 0;
  for (const auto& c : table.classes()) {
    if (c.special()) continue;
    const std::int64_t w = c.orbit_size;
    rec.pair_count += w;
    if (alpha <= c.stats.angle && c.stats.angle <= beta) rec.t_count += w;
    if (c.stats.cyclic()) rec.c_count += w;
    for (auto& [m, count] : rec.d_counts)
      if (c.stats.order % m == 0) count += w;
  }
  rec.skipped_singular = (p - 1) * (p - 1) - rec.pair_count;
  rec.discrepancy = st_discrepancy(table);
  for (int n : katz_orders) rec.katz[n] = katz_moment(table, n);
  return rec;
}

double st_discrepancy(const ClassTable& table) {
  const double p = static_cast<double>(table.p());
  const double p2 = p * p;
  // Ascending angle is descending trace.
  const auto hist = trace_histogram(table);
  std::vector<std::pair<double, double>> pts;  // (angle, weight)
  for (auto it = hist.rbegin(); it != hist.rend(); ++it)
    pts.emplace_back(sato_tate_angle(table.p(), it->first), static_cast<double>(it->second));

  // Over-count: [alpha, beta] closed at sample angles i <= j.
  double over = -1e300;
  double best_left = -1e300;  // max over i <= j of F(psi_i) - W_{i-1}
  double W = 0.0;
  for (const auto& [angle, w] : pts) {
    best_left = std::max(best_left, st_mass(angle, p2) - W);
    W += w;
    over = std::max(over, W - st_mass(angle, p2) + best_left);
  }

  // Under-count: open gaps between boundaries 0, psi_1, ..., psi_k, pi.
  double under = -1e300;
  double min_left = st_mass(0.0, p2);  // min over i < j of F(b_i) - W_i
  W = 0.0;
  for (const auto& [angle, w] : pts) {
    under = std::max(under, st_mass(angle, p2) - W - min_left);
    W += w;
    min_left = std::min(min_left, st_mass(angle, p2) - W);
  }
  under = std::max(under, st_mass(std::numbers::pi, p2) - W - min_left);
  return std::max({over, under, 0.0});
}

double katz_moment(const ClassTable& table, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "Katz moment order must be >= 1");
  const auto hist = trace_histogram(table);
  const double root = std::sqrt(static_cast<double>(table.p()));
  auto chebyshev_u = [n](double x) {
    double prev = 1.0;
    double cur = 2.0 * x;
    for (int k = 1; k < n; ++k) {
      const double next = 2.0 * x * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  };
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  double sum = 0.0;
  for (const auto& [t, w] : hist) {
    if (t < 0) continue;
    const double u = chebyshev_u(static_cast<double>(t) / (2.0 * root));
    if (t == 0) {
      sum += static_cast<double>(w) * u;
      continue;
    }
    const auto mirror = hist.find(-t);
    const std::int64_t w_neg = mirror == hist.end() ? 0 : mirror->second;
    // U_n(-x) = (-1)^n U_n(x)
    sum += (static_cast<double>(w) + sign * static_cast<double>(w_neg)) * u;
  }
  for (const auto& [t, w] : hist)
    if (t < 0 && hist.find(-t) == hist.end())
      sum += sign * static_cast<double>(w) * chebyshev_u(static_cast<double>(-t) / (2.0 * root));
  const double q = static_cast<double>(table.p()) - 1.0;
  return sum / (q * q);
}

void validate(const Statistic& stat) {
  std::visit(overloaded{
                 [](const SatoTateStat& s) { mu_st(s.alpha, s.beta); },
                 [](const CyclicStat&) {},
                 [](const DivisibleStat& s) {
                   if (s.m < 1) throw Error(ErrorCode::InvalidStatistic, "Div needs m >= 1");
                 },
                 [](const LangTrotterStat&) {},
                 [](const VarpiOrderStat& s) {
                   if (s.m < 1 || s.k < 0 || s.k >= s.m)
                     throw Error(ErrorCode::InvalidStatistic, "varpi needs m > k >= 0");
                 },
                 [](const VarpiTraceStat& s) {
                   if (s.m < 1 || s.k < 0 || s.k >= s.m)
                     throw Error(ErrorCode::InvalidStatistic, "varpi needs m > k >= 0");
                 },
             },
             stat);
}

bool satisfies(const Statistic& stat, const CurveStats& curve) {
  return std::visit(
      overloaded{
          [&](const SatoTateStat& s) { return s.alpha <= curve.angle && curve.angle <= s.beta; },
          [&](const CyclicStat&) { return curve.cyclic(); },
          [&](const DivisibleStat& s) { return curve.order % s.m == 0; },
          [&](const LangTrotterStat& s) { return curve.trace == s.t; },
          [&](const VarpiOrderStat& s) { return floor_mod(curve.order, s.m) == s.k; },
          [&](const VarpiTraceStat& s) { return floor_mod(curve.trace, s.m) == s.k; },
      },
      stat);
}

std::string stat_name(const Statistic& stat) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const SatoTateStat& s) { os << "st(" << s.alpha << "," << s.beta << ")"; },
                 [&](const CyclicStat&) { os << "cyclic"; },
                 [&](const DivisibleStat& s) { os << "div(" << s.m << ")"; },
                 [&](const LangTrotterStat& s) { os << "lt(" << s.t << ")"; },
                 [&](const VarpiOrderStat& s) { os << "varpi-e(" << s.m << "," << s.k << ")"; },
                 [&](const VarpiTraceStat& s) { os << "varpi-t(" << s.m << "," << s.k << ")"; },
             },
             stat);
  return os.str();
}

Report sweep(const SweepConfig& config) {
  if (config.x < 5) throw Error(ErrorCode::InvalidArgument, "sweep needs x >= 5");
  if (config.x > kMaxClassTablePrime)
    throw Error(ErrorCode::CapacityExceeded,
                "sweep limited to x <= " + std::to_string(kMaxClassTablePrime));
  validate(config.box);
  validate(config.stat);

  const auto all_primes = prime_list(config.x);
  std::vector<std::int64_t> primes;
  for (auto p : all_primes)
    if (p > 3) primes.push_back(p);

  Report report;
  report.config = config;
  report.prime_count = static_cast<std::int64_t>(all_primes.size());
  report.per_prime.resize(primes.size());

  const ClassPredicate predicate = [&](const ClassInfo& c) { return satisfies(config.stat, c.stats); };
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < primes.size(); i = next++) {
      try {
        const auto table = obtain_class_table(primes[i], config.cache_dir);
        const auto bc = m_p_count(table, predicate, config.box);
        report.per_prime[i] = {primes[i], bc.count, bc.nonsingular, bc.singular,
                               bc.member_pairs, bc.expected};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = primes.size();
      }
    }
  };
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& row : report.per_prime) report.aggregate += row.count;

  const double AB = static_cast<double>(config.box.A) * static_cast<double>(config.box.B);
  const double pix = static_cast<double>(report.prime_count);
  const double x = static_cast<double>(config.x);
  std::visit(
      overloaded{
          [&](const SatoTateStat& s) { report.density = mu_st(s.alpha, s.beta); },
          [&](const CyclicStat&) { report.density = big_theta(1e-15).value; },
          [&](const DivisibleStat& s) { report.density = to_double(omega_avg(s.m)); },
          [&](const LangTrotterStat& s) {
            report.density = s.t == 0 ? fouvry_murty_constant() : c_t(s.t, 1e-12).value;
          },
          [&](const VarpiOrderStat&) {},
          [&](const VarpiTraceStat&) {},
      },
      config.stat);

  if (std::holds_alternative<LangTrotterStat>(config.stat)) {
    report.main_term = 4.0 * AB * report.density * std::sqrt(x) / std::log(x);
    report.warnings.push_back(
        "reference only: the sqrt(x)/log(x) main term is crude at this range of x");
  } else if (std::holds_alternative<VarpiOrderStat>(config.stat) ||
             std::holds_alternative<VarpiTraceStat>(config.stat)) {
    report.warnings.push_back("no closed-form main term for congruence counters");
  } else {
    report.main_term = 4.0 * report.density * AB * pix;
    report.warnings.push_back(
        "main term uses pi(x) including p = 2, 3 while the sweep starts at p = 5");
  }
  if (report.main_term && *report.main_term > 0.0)
    report.relative_deviation = std::abs(static_cast<double>(report.aggregate) / *report.main_term - 1.0);
  return report;
}

}  // namespace ellstat
