#pragma once

// Numeric certification of the inequality steps behind the moment bounds,
// MGF-domination checks, the Bell-number lower bound, the conjectured Bell
// bracket, and a Monte Carlo cross-check.
//
// Margins follow one convention: every margin is "right side minus left side"
// (relative where stated), so a margin >= 0 means the inequality holds and a
// check passes iff its worst margin is >= -tolerance. Equality-type sub-checks
// contribute -|relative difference|. Strict checks pass iff worst margin > 0.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subpoisson/exact_moments.hpp"
#include "subpoisson/grid.hpp"
#include "subpoisson/hifloat.hpp"

namespace subpoisson {

struct NamedValue {
  std::string name;
  HiFloat value;
};

/// One grid point where a report-only check found a violation.
struct Finding {
  std::vector<NamedValue> point;
  std::string inequality;
  HiFloat margin;
};

struct CheckReport {
  std::string check_name;
  std::string grid;
  HiFloat tolerance;
  HiFloat worst_margin;
  std::vector<NamedValue> worst_point;
  bool passed = false;
  bool strict = false;
  bool report_only = false;
  Bits precision_bits = kDefaultBits;
  bool escalated = false;
  unsigned workers = 1;
  std::size_t point_count = 0;

  /// CSV layout: one row per evaluated point, cells already rendered.
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
  std::vector<Finding> findings;
};

/// Recomputes `passed` from the margin and tolerance.
void finalize(CheckReport& report);

/// Concatenates reports with identical columns into one, prefixing each row
/// with its source label. Worst margin and point come from the worst part.
CheckReport merge_reports(std::string name, const std::vector<std::pair<std::string, CheckReport>>& parts);

/// Significant digits used for every CSV number.
inline constexpr int kCsvDigits = 20;
/// Significant digits used for JSON margins.
inline constexpr int kJsonDigits = 30;

/// g(x) = 1/W(x) + W(x) - 1 - 1/x - log x + log log(1 + x).
HiFloat g_function(const HiFloat& x);
/// (1 - e^{W(x)})/x^2 + 1/((1 + x) log(1 + x)).
HiFloat g_prime_closed_form(const HiFloat& x);

struct CheckOptions {
  unsigned workers = 1;
};

/// g(x) <= tol and g non-increasing between consecutive grid points.
CheckReport check_g_nonpositive(const GridSpec& grid, const CheckOptions& opts = {});
/// Central finite difference of g against the closed form of g'.
CheckReport check_gprime_form(const GridSpec& grid, const CheckOptions& opts = {});
/// 1/W(x) + W(x) - 1 - 1/x <= log x - log log(1 + x), evaluated as written.
CheckReport check_log_ratio_bound(const GridSpec& grid, const CheckOptions& opts = {});
/// e^{W(x)} >= x^2/((1+x) log(1+x)) + 1, the sign condition equivalent to g' <= 0.
CheckReport check_gprime_nonpositive(const GridSpec& grid, const CheckOptions& opts = {});

/// |W e^W - x| <= 1e-14 x.
CheckReport check_lambert_residual(const GridSpec& grid, const CheckOptions& opts = {});
/// Finite difference of W (step x 1e-5) against W/(x(1 + W)), relative 1e-6.
CheckReport check_lambert_derivative(const GridSpec& grid, const CheckOptions& opts = {});
/// e^{W(x)} <= (x + y)/(1 + log y) for y in {1, 1 + x, 1.1 e^{W(x)}} and
/// equality at y = e^{W(x)}.
CheckReport check_hoorfar_hassani(const GridSpec& grid, const CheckOptions& opts = {});
/// e^{W(x)} <= x^2/((1+x)z) + 1, e^{W(x)} <= (2x+1)/(1+z), and
/// (2x+1)/(1+z) <= x^2/((1+x)z) + 1 with z = log(1 + x). Reports true margins.
CheckReport check_lambert_quadratic(const GridSpec& grid, const CheckOptions& opts = {});
/// x/(1+x) <= log(1+x) <= x and x/log(1+x) <= 1 + x/2.
CheckReport check_log_sandwich(const GridSpec& grid, const CheckOptions& opts = {});

/// E X^k <= exp(mu(e^t - 1)) (k/(e t))^k at t = W(k/mu), and the normalized
/// right side agrees with the mgf intermediate bound to 1e-10.
CheckReport check_mgf_bound_chain(const Distribution& dist, unsigned k);

/// exact <= mgf intermediate <= theorem1 <= corollary poly <= corollary exp
/// for the normalized moment, for every (distribution, k) case.
CheckReport check_proof_chain(const std::vector<std::pair<Distribution, unsigned>>& cases,
                              const CheckOptions& opts = {});

/// log E exp(tX) for Poisson, Binomial and Bernoulli-sum distributions.
HiFloat log_mgf(const Distribution& dist, const HiFloat& t);

/// Exact MGF <= exp(mu(e^t - 1)) on the t grid.
CheckReport check_subpoissonian_mgf(const Distribution& dist, const GridSpec& t_grid,
                                    const CheckOptions& opts = {});

/// 1/(1 - mu(e^t - 1)) > exp(mu(e^t - 1)) strictly on a t grid inside
/// (0, log(1 + 1/mu)); throws DomainError for grids outside that interval.
CheckReport check_exponential_counterexample(const HiFloat& mu, const GridSpec& t_grid,
                                             const CheckOptions& opts = {});

/// B(k, mu)/mu^k >= B_{k/mu}^mu (1 - 1e-9) for mu = 1..mu_max and
/// k = round(m mu) for each multiplier m of the grid.
CheckReport check_theorem2(long mu_max, const GridSpec& multiplier_grid,
                           const CheckOptions& opts = {});

/// The conjectured Bell bracket over k/mu (ratio grid) x mu. For mu >= 1 both
/// sides are checked; for mu < 1 the reversed upper bound is checked.
/// Report-only: violations are listed as findings and never fail a suite.
CheckReport conjecture_sweep(const GridSpec& ratio_grid, const GridSpec& mu_grid,
                             const CheckOptions& opts = {});

struct MCEstimate {
  std::string distribution;
  unsigned k = 0;
  long sample_count = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string rng_algorithm;
  std::string sampler_method;
  double estimate = 0.0;  // of E (X/mu)^k
  double std_error = 0.0;
  double ci99_half_width = 0.0;
};

inline constexpr long kMinMonteCarloSamples = 1000;

/// Sample mean of (X/mu)^k. Reproducible for fixed (seed, workers).
MCEstimate monte_carlo_moment(const Distribution& dist, unsigned k, long samples,
                              std::uint64_t seed, unsigned workers = 1);

/// |estimate - exact| <= 3 standard errors for each case.
CheckReport check_monte_carlo(const std::vector<std::pair<Distribution, unsigned>>& cases,
                              long samples, std::uint64_t seed, unsigned workers = 1);

/// Runs `check` at `bits`; a failing, non-report-only result is recomputed
/// once at 4x the precision and that result is returned.
template <class F>
CheckReport run_with_escalation(Bits bits, F&& check) {
  CheckReport report = [&] {
    WorkingPrecision guard(bits);
    CheckReport r = check();
    r.precision_bits = bits;
    return r;
  }();
  if (report.passed || report.report_only) return report;
  WorkingPrecision guard(bits * 4);
  CheckReport retry = check();
  retry.precision_bits = bits * 4;
  retry.escalated = true;
  return retry;
}

inline constexpr std::string_view kSuiteNames[] = {
    "all",      "g",         "lambert",    "logs",       "mgf",
    "subpoisson", "counterexample", "theorem2", "conjecture", "montecarlo"};

struct SuiteConfig {
  GridSpec x_grid = log_grid(1e-6, 1e6, 10000);
  GridSpec lambert_grid = log_grid(1e-9, 1e9, 10000);
  GridSpec derivative_grid = log_grid(1e-3, 1e3, 1000);
  GridSpec t_grid = log_grid(1e-4, 5.0, 1000);
  GridSpec ratio_grid = log_grid(0.1, 40.0, 50);
  GridSpec mu_grid = linear_grid(1.0, 10.0, 50);
  GridSpec reversed_mu_grid = linear_grid(0.1, 1.0, 10);
  GridSpec theorem2_multipliers = linear_grid(1.0, 30.0, 30);
  long theorem2_mu_max = 10;
  long mc_samples = 200000;
  std::uint64_t seed = 20240601;
  unsigned workers = 1;
  Bits bits = kDefaultBits;
  int random_bernoulli_sums = 20;
};

bool is_suite_name(std::string_view name);

/// Cases used by the proof-chain and mgf-chain suites: Poisson means
/// {1/10, 1/2, 1, 5, 10, 100} with k in [1, 50], and Binomial n in
/// {5, 20, 100}, p in {1/10, 1/2, 9/10} with k <= min(n, 30).
std::vector<std::pair<Distribution, unsigned>> standard_chain_cases();

/// Seeded random Bernoulli sums with lengths 2..20 and probabilities in
/// (0, 1] on a 1/1000 lattice.
std::vector<Distribution> random_bernoulli_sums(int count, std::uint64_t seed);

/// Runs a named suite; "all" runs every suite in a fixed order.
std::vector<CheckReport> run_suite(std::string_view suite, const SuiteConfig& config);

}  // namespace subpoisson
