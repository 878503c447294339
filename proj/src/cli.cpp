#include "ellstat/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellstat/cache.hpp"
#include "ellstat/charsums.hpp"
#include "ellstat/densities.hpp"
#include "ellstat/harness.hpp"

namespace ellstat::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_usage_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime:
    case ErrorCode::PrimeTooSmall:
    case ErrorCode::CapacityExceeded:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::InvalidInterval:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidM:
    case ErrorCode::ZeroTrace:
    case ErrorCode::InvalidStatistic:
      return true;
    default:
      return false;
  }
}

struct Options {
  std::int64_t prime = 0;
  std::int64_t x = 0;
  std::int64_t A = 1;
  std::int64_t B = 1;
  std::int64_t shift_a = 0;
  std::int64_t shift_b = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::string alpha = "0";
  std::string beta = "pi";
  std::vector<std::int64_t> ms;
  std::int64_t k = 0;
  std::int64_t t = 0;
  int nu = 1;
  double eta = 1.0 / 24.0;
  double eps = 1e-12;
  std::int64_t M = 1;
  std::int64_t s = 1;
  std::string stat;
  std::string format;
  std::string out_path;
  std::string cache_dir;
  std::string name;
  int jobs = 1;
};

std::int64_t single_m(const Options& o) {
  if (o.ms.size() != 1) throw UsageError("exactly one --m value is required");
  return o.ms.front();
}

json curve_json(std::int64_t p, const CurveStats& c) {
  return {{"p", p},           {"a", c.a},
          {"b", c.b},         {"order", c.order},
          {"trace", c.trace}, {"angle", c.angle},
          {"n1", c.group.n1}, {"n2", c.group.n2},
          {"cyclic", c.cyclic()}};
}

json record_json(const PerPrimeRecord& r) {
  json d = json::object();
  for (const auto& [m, c] : r.d_counts) d[std::to_string(m)] = c;
  json k = json::object();
  for (const auto& [n, v] : r.katz) k[std::to_string(n)] = v;
  return {{"p", r.p},
          {"alpha", r.alpha},
          {"beta", r.beta},
          {"pair_count", r.pair_count},
          {"t_count", r.t_count},
          {"c_count", r.c_count},
          {"d_counts", d},
          {"discrepancy", r.discrepancy},
          {"katz", k},
          {"skipped_singular", r.skipped_singular}};
}

json report_json(const Report& r) {
  json config = {{"x", r.config.x},
                 {"A", r.config.box.A},
                 {"B", r.config.box.B},
                 {"shift_a", r.config.box.shiftA},
                 {"shift_b", r.config.box.shiftB},
                 {"stat", stat_name(r.config.stat)},
                 {"pi_x", r.prime_count},
                 {"density", r.density}};
  json rows = json::array();
  for (const auto& row : r.per_prime)
    rows.push_back({{"p", row.p},
                    {"count", row.count},
                    {"nonsingular", row.nonsingular},
                    {"skipped_singular", row.skipped_singular},
                    {"member_pairs", row.member_pairs},
                    {"expected", row.expected}});
  json out = {{"config", config},
              {"per_prime", rows},
              {"aggregate", r.aggregate},
              {"main_term", nullptr},
              {"relative_deviation", nullptr},
              {"warnings", r.warnings}};
  if (r.main_term) out["main_term"] = *r.main_term;
  if (r.relative_deviation) out["relative_deviation"] = *r.relative_deviation;
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Statistic make_statistic(const Options& o) {
  if (o.stat == "st") return SatoTateStat{parse_angle(o.alpha), parse_angle(o.beta)};
  if (o.stat == "cyclic") return CyclicStat{};
  if (o.stat == "div") return DivisibleStat{single_m(o)};
  if (o.stat == "lt") return LangTrotterStat{o.t};
  if (o.stat == "varpi-e") return VarpiOrderStat{single_m(o), o.k};
  if (o.stat == "varpi-t") return VarpiTraceStat{single_m(o), o.k};
  throw Error(ErrorCode::InvalidStatistic, "unknown statistic '" + o.stat + "'");
}

// --- subcommand bodies: each writes its report to `out` ---

void cmd_curve(const Options& o, std::ostream& out) {
  const auto ctx = build_context(o.prime);
  const auto c = curve_stats(ctx, ctx.reduce(o.a), ctx.reduce(o.b));
  if (o.format == "csv") {
    out << "p,a,b,order,trace,angle,n1,n2\n"
        << o.prime << ',' << c.a << ',' << c.b << ',' << c.order << ',' << c.trace << ','
        << format_double(c.angle) << ',' << c.group.n1 << ',' << c.group.n2 << '\n';
  } else {
    out << curve_json(o.prime, c).dump(2) << '\n';
  }
}

void cmd_classes(const Options& o, std::ostream& out) {
  const auto ctx = build_context(o.prime);
  const auto table = obtain_class_table(o.prime, o.cache_dir.empty()
                                                     ? std::nullopt
                                                     : std::optional<std::filesystem::path>(o.cache_dir));
  std::vector<std::int64_t> ms = o.ms.empty() ? std::vector<std::int64_t>{1, 2, 3, 4} : o.ms;
  const auto rec = per_prime_counts(table, parse_angle(o.alpha), parse_angle(o.beta), ms,
                                    {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  if (o.format == "csv") {
    out << "class_id,r,s,orbit_size,trace,order,angle,n1,n2,mu\n";
    for (const auto& c : table.classes()) {
      out << c.id << ',' << c.r << ',' << c.s << ',' << c.orbit_size << ',' << c.stats.trace
          << ',' << c.stats.order << ',' << format_double(c.stats.angle) << ','
          << c.stats.group.n1 << ',' << c.stats.group.n2 << ',';
      if (!c.special()) out << min_weierstrass(table, c.id);
      out << '\n';
    }
    return;
  }
  json classes = json::array();
  for (const auto& c : table.classes()) {
    json row = curve_json(o.prime, c.stats);
    row["class_id"] = c.id;
    row["orbit_size"] = c.orbit_size;
    row["mu"] = c.special() ? json(nullptr) : json(min_weierstrass(table, c.id));
    classes.push_back(row);
  }
  out << json{{"p", o.prime},
              {"class_count", table.class_count()},
              {"classes", classes},
              {"record", record_json(rec)}}
             .dump(2)
      << '\n';
}

void cmd_density(const Options& o, std::ostream& out) {
  json result;
  std::string text;
  if (o.name == "mu-st") {
    const double v = mu_st(parse_angle(o.alpha), parse_angle(o.beta));
    text = format_double(v);
    result = {{"value", v}};
  } else if (o.name == "vartheta") {
    const auto v = vartheta_p(o.prime);
    text = to_string(v);
    result = {{"value", text}, {"approx", to_double(v)}};
  } else if (o.name == "theta") {
    const auto v = big_theta(o.eps);
    text = format_double(v.value);
    result = {{"value", v.value}, {"abs_error", v.abs_error}};
  } else if (o.name == "omega") {
    const auto v = omega_k(o.k, single_m(o));
    text = to_string(v);
    result = {{"value", text}, {"approx", to_double(v)}};
  } else if (o.name == "mu") {
    const auto v = mu_of_m(single_m(o));
    text = std::to_string(v);
    result = {{"value", v}};
  } else if (o.name == "omega-avg") {
    const auto v = omega_avg(single_m(o));
    text = to_string(v);
    result = {{"value", text}, {"approx", to_double(v)}};
  } else if (o.name == "c-t") {
    const auto v = c_t(o.t, o.eps);
    text = format_double(v.value);
    result = {{"value", v.value}, {"abs_error", v.abs_error}};
  } else if (o.name == "fouvry-murty") {
    const double v = fouvry_murty_constant();
    text = format_double(v);
    result = {{"value", v}};
  } else {
    throw UsageError("unknown density '" + o.name + "'");
  }
  if (o.format == "json") {
    result["name"] = o.name;
    out << result.dump(2) << '\n';
  } else {
    out << text << '\n';
  }
}

void cmd_lemma(const Options& o, std::ostream& out) {
  const auto ctx = build_context(o.prime);
  const std::int64_t p = o.prime;
  const std::int64_t half = (p - 1) / 2;
  json result = {{"lemma", o.name}, {"p", p}};
  if (o.name == "zsb") {
    // |#Z_s(B;p) - 2B| <= 11 sigma_p(B), every unit s and every B <= (p-1)/2.
    const auto sr = sigma_rho_table(ctx, half);
    std::int64_t violations = 0;
    double worst = 0.0;
    for (Residue s = 1; s < ctx.p(); ++s) {
      const auto z = z_set_counts(ctx, s);
      for (std::int64_t B = 1; B <= half; ++B) {
        const double dev = std::abs(static_cast<double>(z[static_cast<std::size_t>(B)] - 2 * B));
        const double bound = 11.0 * sr[static_cast<std::size_t>(B)].sigma;
        worst = std::max(worst, dev / bound);
        if (dev > bound) ++violations;
      }
    }
    result["violations"] = violations;
    result["worst_ratio"] = worst;
  } else if (o.name == "zrs") {
    const auto sr = sigma_rho(ctx, std::max(o.A, o.B));
    const double dev = zrs_deviation(ctx, ctx.reduce(o.s), o.A, o.B);
    const double a = static_cast<double>(o.A), b = static_cast<double>(o.B), q = static_cast<double>(p);
    const double z = static_cast<double>(z_set_count(ctx, ctx.reduce(o.s), o.B));
    result["deviation"] = dev;
    result["z_s"] = z;
    result["bound_fourth_moment"] = std::sqrt(a) * b * std::pow(q, 0.25) + std::sqrt(a * b * q);
    result["bound_polya_vinogradov"] = std::sqrt(b) * q * std::log(q);
    result["sigma"] = sigma_rho(ctx, o.B).sigma;
    result["rho"] = sr.rho;
  } else if (o.name == "sigma") {
    const auto sr = sigma_rho(ctx, o.M);
    result["M"] = o.M;
    result["sigma"] = sr.sigma;
    result["rho"] = sr.rho;
  } else if (o.name == "fourth-moment") {
    const auto w = o.B > 0 ? Window::signed_box(o.B) : Window::interval(0, o.M);
    const auto fm = fourth_moment(ctx, w);
    const double len = static_cast<double>(w.values.size());
    result["char_side"] = fm.char_side;
    result["count_side"] = fm.count_side;
    result["identity_rhs"] = fm.all_characters / static_cast<double>(p - 1);
    result["envelope_ratio"] = fm.char_side / (static_cast<double>(p) * len * len);
  } else if (o.name == "burgess") {
    result["bound"] = burgess_bound(p, o.M, o.nu);
    double worst = 0.0;
    for (std::uint32_t j = 1; j + 1 < ctx.p(); ++j)
      worst = std::max(worst, std::abs(interval_char_sum(character(ctx, j), 0, o.M).value));
    result["max_sum"] = worst;
  } else if (o.name == "error-bounds") {
    const auto eb = error_bounds(p, o.A, o.B, sigma_rho(ctx, o.B).sigma, sigma_rho(ctx, o.A).rho);
    result["E1"] = eb.e1;
    result["E2"] = eb.e2;
  } else if (o.name == "qr-window") {
    if (ctx.d_p() != 2) throw UsageError("qr-window needs gcd(p-1, 6) = 2");
    std::int64_t mismatches = 0;
    for (Residue s = 1; s < ctx.p(); ++s) {
      const auto z = z_set_counts(ctx, s);
      const bool residue = ctx.qr(s) == 1;
      for (std::int64_t B = 1; B <= half; ++B)
        if (z[static_cast<std::size_t>(B)] != 2 * quadratic_window_count(ctx, B, residue)) ++mismatches;
    }
    result["mismatches"] = mismatches;
    result["qr_count"] = quadratic_window_count(ctx, o.B, true);
    result["qnr_count"] = quadratic_window_count(ctx, o.B, false);
  } else if (o.name == "min-weierstrass") {
    const auto table = build_class_table(ctx);
    std::int64_t worst = 0, classes = 0, below_sqrt = 0;
    for (const auto& c : table.classes()) {
      if (c.special()) continue;
      const auto mu = min_weierstrass(table, c.id);
      worst = std::max(worst, mu);
      ++classes;
      if (static_cast<double>(mu) <= std::sqrt(static_cast<double>(p))) ++below_sqrt;
    }
    result["classes"] = classes;
    result["max_mu"] = worst;
    result["below_sqrt_p"] = below_sqrt;
  } else {
    throw UsageError("unknown lemma '" + o.name + "'");
  }
  out << result.dump(2) << '\n';
}

void cmd_census(const Options& o, std::ostream& out) {
  const auto r = garaev_census(o.x, o.M, o.eta);
  out << json{{"x", o.x},
              {"M", o.M},
              {"eta", o.eta},
              {"count", r.count},
              {"primes_checked", r.primes_checked},
              {"envelope", r.envelope},
              {"exceptional_primes", r.exceptional_primes}}
             .dump(2)
      << '\n';
}

void cmd_sweep(const Options& o, std::ostream& out) {
  SweepConfig config;
  config.x = o.x;
  config.box = {o.A, o.B, o.shift_a, o.shift_b};
  config.stat = make_statistic(o);
  config.jobs = o.jobs;
  if (!o.cache_dir.empty()) config.cache_dir = o.cache_dir;
  const auto report = sweep(config);
  if (o.format == "csv") {
    out << "p,count,nonsingular,skipped_singular,member_pairs,expected\n";
    for (const auto& row : report.per_prime)
      out << row.p << ',' << row.count << ',' << row.nonsingular << ',' << row.skipped_singular
          << ',' << row.member_pairs << ',' << format_double(row.expected) << '\n';
  } else {
    out << report_json(report).dump(2) << '\n';
  }
}

void cmd_cache(const Options& o, std::ostream& out) {
  if (o.cache_dir.empty()) throw UsageError("--cache-dir is required");
  const std::filesystem::path dir(o.cache_dir);
  json result = {{"action", o.name}, {"p", o.prime}};
  if (o.name == "store") {
    const auto table = build_class_table(build_context(o.prime));
    cache_store(table, dir);
    result["class_count"] = table.class_count();
    result["path"] = cache_path(dir, o.prime).string();
  } else if (o.name == "load") {
    const auto table = cache_load(o.prime, dir);
    result["class_count"] = table.class_count();
  } else if (o.name == "verify") {
    const auto loaded = cache_load(o.prime, dir);
    const auto fresh = build_class_table(build_context(o.prime));
    result["identical"] = loaded.rows() == fresh.rows();
    if (loaded.rows() != fresh.rows())
      throw Error(ErrorCode::CorruptCache, "cached rows differ from a fresh build");
  } else {
    throw UsageError("unknown cache action '" + o.name + "'");
  }
  out << result.dump(2) << '\n';
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string s = text;
  bool times_pi = false;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    times_pi = true;
    s.resize(s.size() - 2);
  }
  double v = 1.0;
  if (!(times_pi && (s.empty() || s == "+"))) {
    std::size_t used = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse angle '" + text + "'");
    }
    if (used != s.size()) throw UsageError("cannot parse angle '" + text + "'");
  }
  return times_pi ? v * std::numbers::pi : v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact elliptic-curve statistics over small prime fields", "ellstat"};
  app.require_subcommand(1);
  Options o;
  auto fmt = [&](CLI::App* sub, const std::string& def) {
    o.format = def;
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out_path, "write the report here instead of stdout");
  };

  auto* curve = app.add_subcommand("curve", "statistics of one curve");
  curve->add_option("--prime", o.prime)->required();
  curve->add_option("--a", o.a)->required();
  curve->add_option("--b", o.b)->required();

  auto* classes = app.add_subcommand("classes", "isomorphism classes and per-prime counts");
  classes->add_option("--prime", o.prime)->required();
  classes->add_option("--alpha", o.alpha, "radians, or a multiple of pi such as 0.25pi");
  classes->add_option("--beta", o.beta);
  classes->add_option("--m", o.ms, "divisors to count, comma separated")->delimiter(',');
  classes->add_option("--cache-dir", o.cache_dir);

  auto* density = app.add_subcommand("density", "closed-form densities and constants");
  density->add_option("name", o.name,
                      "mu-st | vartheta | theta | omega | mu | omega-avg | c-t | fouvry-murty")
      ->required();
  density->add_option("--alpha", o.alpha);
  density->add_option("--beta", o.beta);
  density->add_option("--prime", o.prime);
  density->add_option("--m", o.ms);
  density->add_option("--k", o.k);
  density->add_option("--t", o.t);
  density->add_option("--eps", o.eps);

  auto* lemma = app.add_subcommand("lemma", "character-sum and Z-set checks at one prime");
  lemma->add_option("name", o.name,
                    "zsb | zrs | sigma | fourth-moment | burgess | error-bounds | qr-window | "
                    "min-weierstrass")
      ->required();
  lemma->add_option("--prime", o.prime)->required();
  lemma->add_option("--A", o.A);
  lemma->add_option("--B", o.B);
  lemma->add_option("--M", o.M);
  lemma->add_option("--s", o.s);
  lemma->add_option("--nu", o.nu);

  auto* census = app.add_subcommand("census", "primes with large short character sums");
  census->add_option("--x", o.x)->required();
  census->add_option("--M", o.M)->required();
  census->add_option("--eta", o.eta);

  auto* sweep_cmd = app.add_subcommand("sweep", "box averages over primes p <= x");
  sweep_cmd->add_option("--x", o.x)->required();
  sweep_cmd->add_option("--A", o.A)->required();
  sweep_cmd->add_option("--B", o.B)->required();
  sweep_cmd->add_option("--shift-a", o.shift_a);
  sweep_cmd->add_option("--shift-b", o.shift_b);
  sweep_cmd->add_option("--stat", o.stat, "st | cyclic | div | lt | varpi-e | varpi-t")->required();
  sweep_cmd->add_option("--alpha", o.alpha);
  sweep_cmd->add_option("--beta", o.beta);
  sweep_cmd->add_option("--m", o.ms);
  sweep_cmd->add_option("--k", o.k);
  sweep_cmd->add_option("--t", o.t);
  sweep_cmd->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--cache-dir", o.cache_dir);

  auto* cache = app.add_subcommand("cache", "per-prime class table cache");
  cache->add_option("action", o.name, "store | load | verify")->required();
  cache->add_option("--prime", o.prime)->required();
  cache->add_option("--cache-dir", o.cache_dir)->required();

  for (auto* sub : {curve, classes, lemma, census, sweep_cmd, cache}) fmt(sub, "json");
  fmt(density, "");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  std::ostringstream buffer;
  try {
    if (*curve) cmd_curve(o, buffer);
    else if (*classes) cmd_classes(o, buffer);
    else if (*density) cmd_density(o, buffer);
    else if (*lemma) cmd_lemma(o, buffer);
    else if (*census) cmd_census(o, buffer);
    else if (*sweep_cmd) cmd_sweep(o, buffer);
    else if (*cache) cmd_cache(o, buffer);
  } catch (const UsageError& e) {
    err << "ellstat: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "ellstat: " << e.what() << '\n';
    return is_usage_code(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "ellstat: " << e.what() << '\n';
    return 1;
  }

  if (o.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "ellstat: cannot write " << o.out_path << '\n';
      return 1;
    }
    file << buffer.str();
  }
  return 0;
}

}  // namespace ellstat::cli
