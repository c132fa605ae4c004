#include "subpoisson/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "subpoisson/bounds.hpp"
#include "subpoisson/errors.hpp"
#include "subpoisson/exact_moments.hpp"
#include "subpoisson/grid.hpp"
#include "subpoisson/report_io.hpp"
#include "subpoisson/svg_plot.hpp"
#include "subpoisson/verify.hpp"

namespace subpoisson::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kDigits = 30;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

Rational rational_arg(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(text);
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

long integer_arg(const std::string& text, const std::string& flag) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError(flag + ": expected an integer, got '" + text + "'");
  return v;
}

GridSpec grid_arg(const std::string& text, const std::string& flag) {
  try {
    GridSpec g = GridSpec::parse(text);
    g.validate();
    return g;
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

HiFloat real_arg(const std::string& text, const std::string& flag) {
  return HiFloat(rational_arg(text, flag));
}

// ---------------------------------------------------------------- moment

struct DistributionArgs {
  std::string poisson;
  std::vector<std::string> binomial;
  std::string bernoulli;

  void attach(CLI::App* app) {
    app->add_option("--poisson", poisson, "Poisson mean (decimal or a/b)");
    app->add_option("--binomial", binomial, "Binomial trials and success probability")
        ->expected(2);
    app->add_option("--bernoulli", bernoulli, "Comma-separated success probabilities");
  }

  int given() const {
    return static_cast<int>(!poisson.empty()) + static_cast<int>(!binomial.empty()) +
           static_cast<int>(!bernoulli.empty());
  }

  std::optional<Distribution> build() const {
    if (given() > 1) throw UsageError("give at most one of --poisson, --binomial, --bernoulli");
    if (!poisson.empty()) return Distribution::poisson(rational_arg(poisson, "--poisson"));
    if (!binomial.empty())
      return Distribution::binomial(integer_arg(binomial[0], "--binomial"),
                                    rational_arg(binomial[1], "--binomial"));
    if (!bernoulli.empty()) {
      std::vector<Rational> probs;
      for (const auto& p : split(bernoulli, ',')) probs.push_back(rational_arg(p, "--bernoulli"));
      if (probs.empty()) throw UsageError("--bernoulli needs at least one probability");
      return Distribution::bernoulli_sum(std::move(probs));
    }
    return std::nullopt;
  }
};

struct MomentArgs {
  DistributionArgs dist;
  long k = -1;
  Bits bits = kDefaultBits;
};

int cmd_moment(const MomentArgs& a, std::ostream& out) {
  const auto dist = a.dist.build();
  if (!dist) throw UsageError("moment needs one of --poisson, --binomial, --bernoulli");
  if (a.k < 0) throw UsageError("-k must be a nonnegative integer");
  const Rational m = dist->raw_moment(static_cast<unsigned>(a.k));
  WorkingPrecision guard(std::max<Bits>(a.bits, kDefaultBits));
  out << m.get_str() << "\n";
  out << HiFloat(m).to_display(kDigits) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- bounds

struct BoundContext {
  std::optional<LatalaConstants> latala;
  std::optional<std::pair<long, Rational>> binomial;
  DobinskiOptions dobinski;
};

std::optional<unsigned> integral_k(const HiFloat& k) {
  if (!k.is_integer() || k < 1 || k > HiFloat(1L << 20)) return std::nullopt;
  return static_cast<unsigned>(k.to_long_floor());
}

unsigned require_integral_k(const HiFloat& k, BoundKind kind) {
  const auto ik = integral_k(k);
  if (!ik) throw UsageError(std::string(to_string(kind)) + " needs a positive integer k");
  return *ik;
}

// Normalized bound, or nullopt where the bound does not apply (conjecture
// sides outside their mu range).
std::optional<BoundResult> evaluate(BoundKind kind, const HiFloat& k, const HiFloat& mu,
                                    const BoundContext& ctx) {
  switch (kind) {
    case BoundKind::Theorem1:
      return theorem1_bound(k, mu);
    case BoundKind::CorollaryPoly:
      return corollary_bounds(k, mu).first;
    case BoundKind::CorollaryExp:
      return corollary_bounds(k, mu).second;
    case BoundKind::MgfIntermediate:
      return mgf_intermediate_bound(k, mu);
    case BoundKind::LatalaLower:
    case BoundKind::LatalaUpper: {
      if (!ctx.latala) throw UsageError("latala bounds need both -c and -C");
      const auto [lo, hi] = latala_bounds(k, mu, *ctx.latala);
      return kind == BoundKind::LatalaLower ? lo : hi;
    }
    case BoundKind::BerendTassa:
      return berend_tassa_bound(require_integral_k(k, kind), mu, false);
    case BoundKind::BerendTassaCap:
      return berend_tassa_bound(require_integral_k(k, kind), mu, true);
    case BoundKind::PoissonLower:
      return poisson_lower(require_integral_k(k, kind), mu);
    case BoundKind::BinomialLower:
      if (!ctx.binomial) throw UsageError("binomial-lower needs --binomial N P");
      return binomial_lower(ctx.binomial->first, ctx.binomial->second, require_integral_k(k, kind));
    case BoundKind::BellPowerLower:
      return bell_power_lower_bound(k, mu, ctx.dobinski);
    case BoundKind::ConjectureLower:
      if (mu < 1) return std::nullopt;
      return conjecture_bounds(k, mu, ctx.dobinski).first;
    case BoundKind::ConjectureUpper:
      if (mu < 1) return conjecture_reversed_upper(k, mu, ctx.dobinski);
      return conjecture_bounds(k, mu, ctx.dobinski).second;
  }
  return std::nullopt;
}

std::vector<BoundKind> expand_kind(const std::string& name) {
  if (name == "corollary") return {BoundKind::CorollaryPoly, BoundKind::CorollaryExp};
  if (name == "latala") return {BoundKind::LatalaLower, BoundKind::LatalaUpper};
  if (name == "conjecture") return {BoundKind::ConjectureLower, BoundKind::ConjectureUpper};
  if (name == "ostrovsky")
    throw UsageError("ostrovsky: not implemented, its constant C(mu) is unspecified");
  if (const auto kind = parse_bound_kind(name)) return {*kind};
  throw UsageError("unknown bound kind '" + name + "'");
}

std::vector<BoundKind> expand_kinds(const std::vector<std::string>& names) {
  std::vector<BoundKind> out;
  for (const auto& n : names)
    for (BoundKind k : expand_kind(n))
      if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  return out;
}

std::string render_value(const BoundResult& r) {
  switch (r.status) {
    case BoundStatus::Ok:
      return r.value->to_display(kDigits);
    case BoundStatus::Overflow:
      return "overflow";
    case BoundStatus::Vacuous:
      return "vacuous";
  }
  return "";
}

struct LatalaArgs {
  std::string lower;
  std::string upper;

  void attach(CLI::App* app) {
    app->add_option("-c", lower, "Lower Latala constant c (0 < c <= 1)");
    app->add_option("-C", upper, "Upper Latala constant C (C >= 1)");
  }

  std::optional<LatalaConstants> build() const {
    if (lower.empty() && upper.empty()) return std::nullopt;
    if (lower.empty() || upper.empty()) throw UsageError("latala bounds need both -c and -C");
    return LatalaConstants{real_arg(lower, "-c"), real_arg(upper, "-C")};
  }
};

// Above the default cap the Dobinski order needs an explicit --bits.
DobinskiOptions dobinski_options(const CLI::Option* bits_option, Bits bits) {
  DobinskiOptions opts;
  if (bits_option->count() > 0 && bits > kDefaultBits) opts.max_order = HiFloat::infinity();
  return opts;
}

struct BoundArgs {
  std::vector<std::string> kinds;
  std::string k;
  std::string mu;
  LatalaArgs latala;
  std::vector<std::string> binomial;
  bool raw = false;
  Bits bits = kDefaultBits;
  CLI::Option* bits_option = nullptr;
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  const std::vector<BoundKind> kinds = expand_kinds(a.kinds);
  WorkingPrecision guard(a.bits);
  BoundContext ctx;
  ctx.latala = a.latala.build();
  ctx.dobinski = dobinski_options(a.bits_option, a.bits);
  if (!a.binomial.empty())
    ctx.binomial.emplace(integer_arg(a.binomial[0], "--binomial"), rational_arg(a.binomial[1], "--binomial"));
  for (BoundKind kind : kinds)
    if ((kind == BoundKind::LatalaLower || kind == BoundKind::LatalaUpper) && !ctx.latala)
      throw UsageError("latala bounds need both -c and -C");
  if (a.k.empty()) throw UsageError("bound needs -k");
  const HiFloat k = real_arg(a.k, "-k");
  HiFloat mu;
  if (ctx.binomial) {
    mu = HiFloat(Rational(ctx.binomial->first) * ctx.binomial->second);
  } else {
    if (a.mu.empty()) throw UsageError("bound needs --mu (or --binomial N P)");
    mu = real_arg(a.mu, "--mu");
  }
  for (BoundKind kind : kinds) {
    const auto r = evaluate(kind, k, mu, ctx);
    out << to_string(kind);
    if (!r) {
      out << " not-applicable (needs mu >= 1)\n";
      continue;
    }
    out << " value=" << render_value(*r) << " log=" << r->log_value.to_display(kDigits);
    if (a.raw) {
      const BoundResult raw = to_raw(*r, k, mu);
      out << " raw_value=" << render_value(raw) << " raw_log=" << raw.log_value.to_display(kDigits);
    }
    if (kind == BoundKind::BinomialLower && binomial_lower_out_of_range(ctx.binomial->first, require_integral_k(k, kind)))
      out << " note=k>n";
    out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite;
  std::string out_dir;
  std::string grid, lambert_grid, derivative_grid, t_grid, k_grid, mu_grid, reversed_mu_grid,
      multiplier_grid;
  long mu_max = 10;
  Bits bits = kDefaultBits;
  unsigned workers = 1;
  std::uint64_t seed = SuiteConfig{}.seed;
  long samples = SuiteConfig{}.mc_samples;
  int random_sums = SuiteConfig{}.random_bernoulli_sums;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (!is_suite_name(a.suite)) throw UsageError("unknown suite '" + a.suite + "'");
  SuiteConfig cfg;
  if (!a.grid.empty()) cfg.x_grid = grid_arg(a.grid, "--grid");
  if (!a.lambert_grid.empty()) cfg.lambert_grid = grid_arg(a.lambert_grid, "--lambert-grid");
  if (!a.derivative_grid.empty()) cfg.derivative_grid = grid_arg(a.derivative_grid, "--derivative-grid");
  if (!a.t_grid.empty()) cfg.t_grid = grid_arg(a.t_grid, "--t-grid");
  if (!a.k_grid.empty()) cfg.ratio_grid = grid_arg(a.k_grid, "--k-grid");
  if (!a.mu_grid.empty()) cfg.mu_grid = grid_arg(a.mu_grid, "--mu-grid");
  if (!a.reversed_mu_grid.empty()) cfg.reversed_mu_grid = grid_arg(a.reversed_mu_grid, "--reversed-mu-grid");
  if (!a.multiplier_grid.empty()) cfg.theorem2_multipliers = grid_arg(a.multiplier_grid, "--multiplier-grid");
  if (a.mu_max < 1) throw UsageError("--mu-max must be >= 1");
  if (a.samples < kMinMonteCarloSamples)
    throw UsageError("--samples must be at least " + std::to_string(kMinMonteCarloSamples));
  if (a.workers < 1) throw UsageError("--workers must be >= 1");
  cfg.theorem2_mu_max = a.mu_max;
  cfg.bits = a.bits;
  cfg.workers = a.workers;
  cfg.seed = a.seed;
  cfg.mc_samples = a.samples;
  cfg.random_bernoulli_sums = a.random_sums;

  std::string dir = a.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv(kOutDirEnv);
    dir = (env != nullptr && *env != '\0') ? env : "report";
  }

  const std::vector<CheckReport> reports = run_suite(a.suite, cfg);
  write_reports(dir, reports);
  bool ok = true;
  for (const CheckReport& r : reports) {
    const char* status = r.report_only ? "REPORT" : (r.passed ? "PASS" : "FAIL");
    out << status << " " << r.check_name << " worst_margin=" << r.worst_margin.to_string(17)
        << " tolerance=" << r.tolerance.to_string(3) << " points=" << r.point_count
        << " bits=" << r.precision_bits << (r.escalated ? " escalated" : "") << "\n";
    if (r.report_only)
      out << "  findings=" << r.findings.size() << "\n";
    for (const Finding& f : r.findings) {
      out << "  finding " << f.inequality << " margin=" << f.margin.to_string(17);
      for (const NamedValue& v : f.point) out << " " << v.name << "=" << v.value.to_string(kDigits);
      out << "\n";
    }
    if (!r.report_only && !r.passed) ok = false;
  }
  out << "reports written to " << dir << "\n";
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string k;
  std::string k_grid;
  std::string mu = "1";
  std::string mu_grid;
  std::string bounds = "theorem1,corollary,mgf";
  CLI::Option* bounds_option = nullptr;
  std::string exact = "poisson";
  LatalaArgs latala;
  std::string out_path;
  std::string svg_path;
  bool loglog = false;
  Bits bits = kDefaultBits;
  CLI::Option* bits_option = nullptr;
};

std::vector<HiFloat> parse_k_values(const SweepArgs& a) {
  std::vector<HiFloat> ks;
  if (!a.k_grid.empty()) {
    if (!a.k.empty()) throw UsageError("give either --k or --k-grid");
    for (double v : grid_arg(a.k_grid, "--k-grid").points()) ks.emplace_back(v);
    return ks;
  }
  const std::string text = a.k.empty() ? "1..20" : a.k;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const long lo = integer_arg(text.substr(0, dots), "--k");
    const long hi = integer_arg(text.substr(dots + 2), "--k");
    if (lo < 1 || hi < lo) throw UsageError("--k range must satisfy 1 <= lo <= hi");
    for (long v = lo; v <= hi; ++v) ks.emplace_back(v);
    return ks;
  }
  for (const auto& item : split(text, ',')) ks.push_back(real_arg(item, "--k"));
  if (ks.empty()) throw UsageError("--k is empty");
  return ks;
}

std::vector<std::pair<std::string, HiFloat>> parse_mu_values(const SweepArgs& a, bool mu_given) {
  std::vector<std::pair<std::string, HiFloat>> mus;
  if (!a.mu_grid.empty()) {
    if (mu_given) throw UsageError("give either --mu or --mu-grid");
    for (double v : grid_arg(a.mu_grid, "--mu-grid").points()) mus.emplace_back(HiFloat(v).to_string(17), HiFloat(v));
    return mus;
  }
  for (const auto& item : split(a.mu, ',')) mus.emplace_back(item, real_arg(item, "--mu"));
  if (mus.empty()) throw UsageError("--mu is empty");
  return mus;
}

HiFloat exact_log_normalized(const HiFloat& k, const HiFloat& mu, const std::optional<Rational>& mu_exact) {
  if (const auto ik = integral_k(k); ik && mu_exact)
    return log(HiFloat(poisson_raw_moment(*mu_exact, *ik))) - k * log(mu);
  return log(touchard_dobinski(k, mu).value) - k * log(mu);
}

int cmd_sweep(const SweepArgs& a, bool mu_given, std::ostream& out) {
  const auto names = split(a.bounds, ',');
  if (names.empty()) throw UsageError("--bounds is empty");
  const std::vector<BoundKind> kinds = expand_kinds(names);
  for (BoundKind kind : kinds)
    if (kind == BoundKind::BinomialLower)
      throw UsageError("binomial-lower is only available through the bound subcommand");
  if (a.exact != "poisson" && a.exact != "none") throw UsageError("--exact must be poisson or none");
  const bool with_exact = a.exact == "poisson";

  WorkingPrecision guard(a.bits);
  BoundContext ctx;
  ctx.latala = a.latala.build();
  ctx.dobinski = dobinski_options(a.bits_option, a.bits);
  for (BoundKind kind : kinds)
    if ((kind == BoundKind::LatalaLower || kind == BoundKind::LatalaUpper) && !ctx.latala)
      throw UsageError("latala bounds need both -c and -C");
  const std::vector<HiFloat> ks = parse_k_values(a);
  const auto mus = parse_mu_values(a, mu_given);
  for (const HiFloat& k : ks)
    if (!(k > 0)) throw UsageError("k values must be positive");
  for (const auto& [text, mu] : mus)
    if (!(mu > 0)) throw UsageError("mu values must be positive");

  std::vector<std::string> columns{"mu", "k", "k_over_mu"};
  if (with_exact) columns.push_back("log_exact");
  for (BoundKind kind : kinds) {
    columns.push_back("log_" + std::string(to_string(kind)));
    if (with_exact) columns.push_back("margin_" + std::string(to_string(kind)));
  }

  std::vector<std::vector<std::string>> rows;
  std::vector<PlotSeries> series;
  const auto series_for = [&](const std::string& name) -> PlotSeries& {
    for (auto& s : series)
      if (s.name == name) return s;
    series.push_back({name, {}});
    return series.back();
  };
  const auto plot_value = [](const HiFloat& log_value) { return exp(log_value).to_double(); };

  for (const auto& [mu_text, mu] : mus) {
    std::optional<Rational> mu_exact;
    if (!a.mu_grid.empty()) {
      mu_exact = Rational(mu.to_double());
    } else {
      mu_exact = rational_arg(mu_text, "--mu");
    }
    const std::string suffix = mus.size() > 1 ? " mu=" + mu.to_display(6) : "";
    for (const HiFloat& k : ks) {
      const HiFloat ratio = k / mu;
      std::vector<std::string> row{mu.to_string(kCsvDigits), k.to_string(kCsvDigits), ratio.to_string(kCsvDigits)};
      std::optional<HiFloat> log_exact;
      if (with_exact) {
        log_exact = exact_log_normalized(k, mu, mu_exact);
        row.push_back(log_exact->to_string(kCsvDigits));
        series_for("exact" + suffix).points.emplace_back(ratio.to_double(), plot_value(*log_exact));
      }
      for (BoundKind kind : kinds) {
        const auto r = evaluate(kind, k, mu, ctx);
        if (!r) {
          row.emplace_back();
          if (with_exact) row.emplace_back();
          continue;
        }
        row.push_back(r->log_value.to_string(kCsvDigits));
        if (with_exact) {
          const HiFloat margin = is_lower_bound(kind) ? -expm1(r->log_value - *log_exact)
                                                      : -expm1(*log_exact - r->log_value);
          row.push_back(margin.to_string(kCsvDigits));
        }
        series_for(std::string(to_string(kind)) + suffix)
            .points.emplace_back(ratio.to_double(), plot_value(r->log_value));
      }
      rows.push_back(std::move(row));
    }
  }

  const std::string csv = to_csv(columns, rows);
  if (a.out_path.empty()) {
    out << csv;
  } else {
    write_file(a.out_path, csv);
  }
  if (!a.svg_path.empty()) {
    PlotOptions opts;
    opts.title = "Normalized moment E(X/mu)^k and bounds";
    opts.x_label = "k/mu";
    opts.y_label = "E(X/mu)^k";
    opts.log_x = true;
    opts.log_y = a.loglog;
    write_file(a.svg_path, render_svg(series, opts));
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact moments, moment bounds and numeric certification for sub-Poissonian variables",
               "subpoisson"};
  app.require_subcommand(1, 1);

  MomentArgs moment;
  CLI::App* moment_cmd = app.add_subcommand("moment", "Exact raw moment E X^k");
  moment.dist.attach(moment_cmd);
  moment_cmd->add_option("-k,--k", moment.k, "Moment order")->required();
  moment_cmd->add_option("--bits", moment.bits, "Precision of the decimal rendering");

  BoundArgs bound;
  CLI::App* bound_cmd = app.add_subcommand(
      "bound",
      "Evaluate bounds on E (X/mu)^k. Kinds: theorem1, corollary, corollary-poly, corollary-exp, mgf, "
      "latala, latala-lower, latala-upper, berend-tassa, berend-tassa-cap, poisson-lower, "
      "binomial-lower, bell-power-lower, conjecture, conjecture-lower, conjecture-upper. "
      "Ostrovsky's bound is not implemented.");
  bound_cmd->add_option("kinds", bound.kinds, "Bound kinds")->required();
  bound_cmd->add_option("-k,--k", bound.k, "Moment order (real for most kinds)");
  bound_cmd->add_option("--mu", bound.mu, "Mean");
  bound.latala.attach(bound_cmd);
  bound_cmd->add_option("--binomial", bound.binomial, "Binomial trials and success probability (sets mu = np)")
      ->expected(2);
  bound_cmd->add_flag("--raw", bound.raw, "Also print the bound on E X^k");
  bound.bits_option = bound_cmd->add_option("--bits", bound.bits, "Working precision in bits");

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a verification suite and write JSON/CSV reports");
  verify_cmd->add_option("suite", verify.suite,
                         "all | g | lambert | logs | mgf | subpoisson | counterexample | theorem2 | "
                         "conjecture | montecarlo")
      ->required();
  verify_cmd->add_option("--out", verify.out_dir,
                         std::string("Report directory (default $") + kOutDirEnv + " or ./report)");
  verify_cmd->add_option("--grid", verify.grid, "x grid min:max:count:lin|log");
  verify_cmd->add_option("--lambert-grid", verify.lambert_grid, "Lambert residual grid");
  verify_cmd->add_option("--derivative-grid", verify.derivative_grid, "Finite-difference grid");
  verify_cmd->add_option("--t-grid", verify.t_grid, "MGF argument grid");
  verify_cmd->add_option("--k-grid", verify.k_grid, "k/mu grid of the conjecture sweep");
  verify_cmd->add_option("--mu-grid", verify.mu_grid, "mu grid of the conjecture sweep");
  verify_cmd->add_option("--reversed-mu-grid", verify.reversed_mu_grid, "mu grid below 1 for the reversed conjecture");
  verify_cmd->add_option("--multiplier-grid", verify.multiplier_grid, "k/mu multipliers for theorem2");
  verify_cmd->add_option("--mu-max", verify.mu_max, "Largest integer mu for theorem2");
  verify_cmd->add_option("--bits", verify.bits, "Working precision in bits");
  verify_cmd->add_option("--workers", verify.workers, "Worker threads");
  verify_cmd->add_option("--seed", verify.seed, "Seed for random cases and Monte Carlo");
  verify_cmd->add_option("--samples", verify.samples, "Monte Carlo samples per case");
  verify_cmd->add_option("--random-sums", verify.random_sums, "Random Bernoulli sums in the subpoisson suite");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Tabulate bounds against the exact Poisson moment");
  sweep_cmd->add_option("--k", sweep.k, "k values: lo..hi, or a comma list (default 1..20)");
  sweep_cmd->add_option("--k-grid", sweep.k_grid, "k grid min:max:count:lin|log");
  CLI::Option* mu_option = sweep_cmd->add_option("--mu", sweep.mu, "Comma list of means (default 1)");
  sweep_cmd->add_option("--mu-grid", sweep.mu_grid, "mu grid min:max:count:lin|log");
  sweep.bounds_option = sweep_cmd->add_option("--bounds", sweep.bounds, "Comma list of bound kinds");
  sweep_cmd->add_option("--exact", sweep.exact, "poisson | none");
  sweep.latala.attach(sweep_cmd);
  sweep_cmd->add_option("--out", sweep.out_path, "CSV path (default stdout)");
  sweep_cmd->add_option("--svg", sweep.svg_path, "SVG plot path");
  sweep_cmd->add_flag("--loglog", sweep.loglog, "Logarithmic y axis as well");
  sweep.bits_option = sweep_cmd->add_option("--bits", sweep.bits, "Working precision in bits");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*moment_cmd) return cmd_moment(moment, out);
    if (*bound_cmd) return cmd_bound(bound, out);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*sweep_cmd) return cmd_sweep(sweep, mu_option->count() > 0, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace subpoisson::cli
