#include "subpoisson/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "subpoisson/bell_real.hpp"
#include "subpoisson/bounds.hpp"
#include "subpoisson/errors.hpp"
#include "subpoisson/lambert_w.hpp"
#include "subpoisson/parallel.hpp"
#include "subpoisson/sampling.hpp"

namespace subpoisson {
namespace {

std::string cell(const HiFloat& v) { return v.to_string(kCsvDigits); }

// (rhs - lhs) / |rhs|: >= 0 iff lhs <= rhs.
HiFloat rel_upper_margin(const HiFloat& lhs, const HiFloat& rhs) {
  return (rhs - lhs) / abs(rhs);
}

// Same margin from logarithms: 1 - exp(log_lhs - log_rhs).
HiFloat log_margin(const HiFloat& log_lhs, const HiFloat& log_rhs) {
  return -expm1(log_lhs - log_rhs);
}

// -|a - b| / |b|.
HiFloat agreement_margin(const HiFloat& a, const HiFloat& b) { return -abs(a - b) / abs(b); }

struct PointResult {
  std::vector<HiFloat> values;  // one per column, inputs first
  HiFloat margin;
};

CheckReport make_report(std::string name, std::string grid, const char* tolerance,
                        std::vector<std::string> columns, unsigned workers) {
  CheckReport r;
  r.check_name = std::move(name);
  r.grid = std::move(grid);
  r.tolerance = HiFloat::parse(tolerance);
  r.worst_margin = HiFloat::infinity();
  r.columns = std::move(columns);
  r.workers = workers;
  r.precision_bits = WorkingPrecision::current();
  return r;
}

// Appends evaluated points as rows; the margin column is appended last and
// the first `inputs` columns identify the point.
void absorb(CheckReport& r, const std::vector<PointResult>& points, std::size_t inputs) {
  for (const PointResult& p : points) {
    std::vector<std::string> row;
    row.reserve(p.values.size() + 1);
    for (const HiFloat& v : p.values) row.push_back(cell(v));
    row.push_back(cell(p.margin));
    r.rows.push_back(std::move(row));
    if (p.margin.is_nan() || p.margin < r.worst_margin) {
      r.worst_margin = p.margin;
      r.worst_point.clear();
      for (std::size_t i = 0; i < inputs; ++i) r.worst_point.push_back({r.columns[i], p.values[i]});
    }
    ++r.point_count;
  }
}

template <class F>
std::vector<PointResult> evaluate_grid(const GridSpec& grid, unsigned workers, F&& fn) {
  const std::vector<double> xs = grid.points();
  return parallel_map<PointResult>(xs.size(), workers,
                                   [&](std::size_t i) { return fn(HiFloat(xs[i])); });
}

HiFloat mean_of(const Distribution& dist) { return HiFloat(dist.mean()); }

HiFloat log_normalized_exact(const Distribution& dist, unsigned k) {
  const HiFloat mu = mean_of(dist);
  return log(HiFloat(dist.raw_moment(k))) - HiFloat(k) * log(mu);
}

void count_violations(CheckReport& r, std::size_t margin_column, const std::string& label) {
  std::size_t bad = 0;
  for (const auto& row : r.rows) {
    const HiFloat m = HiFloat::parse(row[margin_column]);
    if (m < -r.tolerance) ++bad;
  }
  if (bad > 0)
    r.notes.push_back(label + " violated beyond tolerance at " + std::to_string(bad) + " of " +
                      std::to_string(r.rows.size()) + " points");
}

}  // namespace

void finalize(CheckReport& r) {
  if (r.worst_margin.is_nan()) {
    r.passed = false;
  } else if (r.strict) {
    r.passed = r.worst_margin > 0;
  } else {
    r.passed = r.worst_margin >= -r.tolerance;
  }
}

CheckReport merge_reports(std::string name,
                          const std::vector<std::pair<std::string, CheckReport>>& parts) {
  if (parts.empty()) throw DomainError("merge_reports needs at least one part");
  const CheckReport& first = parts.front().second;
  CheckReport r;
  r.check_name = std::move(name);
  r.tolerance = first.tolerance;
  r.strict = first.strict;
  r.report_only = first.report_only;
  r.precision_bits = first.precision_bits;
  r.workers = first.workers;
  r.worst_margin = HiFloat::infinity();
  r.columns.push_back("case");
  r.columns.insert(r.columns.end(), first.columns.begin(), first.columns.end());
  for (const auto& [label, part] : parts) {
    if (part.columns != first.columns) throw DomainError("merge_reports: column mismatch");
    if (!r.grid.empty()) r.grid += "; ";
    r.grid += label + " @ " + part.grid;
    for (const auto& row : part.rows) {
      std::vector<std::string> out{label};
      out.insert(out.end(), row.begin(), row.end());
      r.rows.push_back(std::move(out));
    }
    if (part.worst_margin.is_nan() || part.worst_margin < r.worst_margin) {
      r.worst_margin = part.worst_margin;
      r.worst_point = part.worst_point;
    }
    r.point_count += part.point_count;
    r.escalated = r.escalated || part.escalated;
    for (const auto& n : part.notes) r.notes.push_back(label + ": " + n);
    for (const auto& f : part.findings) r.findings.push_back(f);
  }
  finalize(r);
  return r;
}

HiFloat g_function(const HiFloat& x) {
  const HiFloat w = lambert_w0(x).w;
  // 1/W - 1/x = (e^W - 1)/x since e^W = x/W.
  return expm1(w) / x + w - 1 - log(x / log1p(x));
}

HiFloat g_prime_closed_form(const HiFloat& x) {
  return (1 - exp_w(x)) / (x * x) + 1 / ((1 + x) * log1p(x));
}

CheckReport check_g_nonpositive(const GridSpec& grid, const CheckOptions& opts) {
  CheckReport r = make_report("g_nonpositive_nonincreasing", grid.describe(), "1e-10",
                              {"x", "g", "margin_nonpositive", "margin_nonincreasing", "margin"},
                              opts.workers);
  std::vector<PointResult> points = evaluate_grid(grid, opts.workers, [](const HiFloat& x) {
    const HiFloat g = g_function(x);
    return PointResult{{x, g, -g, HiFloat(0)}, -g};
  });
  for (std::size_t i = 1; i < points.size(); ++i) {
    const HiFloat step = points[i - 1].values[1] - points[i].values[1];
    points[i].values[3] = step;
    points[i].margin = min(points[i].margin, step);
  }
  absorb(r, points, 1);
  finalize(r);
  return r;
}

CheckReport check_gprime_form(const GridSpec& grid, const CheckOptions& opts) {
  CheckReport r = make_report("gprime_closed_form", grid.describe(), "1e-5",
                              {"x", "finite_difference", "closed_form", "margin"}, opts.workers);
  const Bits elevated = 2 * WorkingPrecision::current();
  const auto points = evaluate_grid(grid, opts.workers, [&](const HiFloat& x_in) {
    WorkingPrecision guard(elevated);
    const HiFloat x = x_in.rounded_to(elevated);
    const HiFloat h = x * HiFloat::parse("1e-6");
    const HiFloat fd = (g_function(x + h) - g_function(x - h)) / (2 * h);
    const HiFloat closed = g_prime_closed_form(x);
    return PointResult{{x_in, fd, closed}, agreement_margin(fd, closed)};
  });
  absorb(r, points, 1);
  r.notes.push_back("finite differences at " + std::to_string(elevated) + "-bit precision");
  finalize(r);
  return r;
}

CheckReport check_log_ratio_bound(const GridSpec& grid, const CheckOptions& opts) {
  CheckReport r = make_report("mgf_exponent_vs_log_ratio", grid.describe(), "1e-10",
                              {"x", "lhs", "rhs", "margin"}, opts.workers);
  const auto points = evaluate_grid(grid, opts.workers, [](const HiFloat& x) {
    const HiFloat w = lambert_w0(x).w;
    const HiFloat lhs = 1 / w + w - 1 - 1 / x;
    const HiFloat rhs = log(x) - log(log1p(x));
    return PointResult{{x, lhs, rhs}, rhs - lhs};
  });
  absorb(r, points, 1);
  finalize(r);
  return r;
}

CheckReport check_gprime_nonpositive(const GridSpec& grid, const CheckOptions& opts) {
  CheckReport r = make_report("gprime_sign_condition", grid.describe(), "1e-12",
                              {"x", "exp_w", "lower", "margin"}, opts.workers);
  const auto points = evaluate_grid(grid, opts.workers, [](const HiFloat& x) {
    const HiFloat ew = exp_w(x);
    const HiFloat lower = x * x / ((1 + x) * log1p(x)) + 1;
    // lower <= e^W, relative to e^W.
    return PointResult{{x, ew, lower}, rel_upper_margin(lower, ew)};
  });
  absorb(r, points, 1);
  finalize(r);
  return r;
}

CheckReport check_lambert_residual(const GridSpec& grid, const CheckOptions& opts) {
  CheckReport r = make_report("lambert_residual", grid.describe(), "1e-14",
                              {"x", "w", "residual", "margin"}, opts.workers);
  const auto points = evaluate_grid(grid, opts.workers, [](const HiFloat& x) {
    const HiFloat w = lambert_w0(x).w;
    const HiFloat residual = abs(w * exp(w) - x) / x;
    return PointResult{{x, w, residual}, -residual};
  });
  absorb(r, points, 1);
  finalize(r);
  return r;
}

CheckReport check_lambert_derivative(const GridSpec& grid, const CheckOptions& opts) {
  CheckReport r = make_report("lambert_derivative", grid.describe(), "1e-6",
                              {"x", "finite_difference", "identity", "margin"}, opts.workers);
  const auto points = evaluate_grid(grid, opts.workers, [](const HiFloat& x) {
    const HiFloat h = x * HiFloat::parse("1e-5");
    const HiFloat fd = (lambert_w0(x + h).w - lambert_w0(x - h).w) / (2 * h);
    const HiFloat w = lambert_w0(x).w;
    const HiFloat identity = w / (x * (1 + w));
    return PointResult{{x, fd, identity}, agreement_margin(fd, identity)};
  });
  absorb(r, points, 1);
  finalize(r);
  return r;
}

CheckReport check_hoorfar_hassani(const GridSpec& grid, const CheckOptions& opts) {
  CheckReport r = make_report(
      "hoorfar_hassani", grid.describe(), "1e-12",
      {"x", "exp_w", "upper_y1", "upper_y1px", "upper_y1p1ew", "upper_yew", "margin_y1",
       "margin_y1px", "margin_y1p1ew", "margin_equality", "margin"},
      opts.workers);
  const auto points = evaluate_grid(grid, opts.workers, [](const HiFloat& x) {
    const HiFloat ew = exp_w(x);
    const HiFloat u1 = hoorfar_hassani_upper(x, HiFloat(1));
    const HiFloat u2 = hoorfar_hassani_upper(x, 1 + x);
    const HiFloat u3 = hoorfar_hassani_upper(x, HiFloat::parse("1.1") * ew);
    const HiFloat ueq = hoorfar_hassani_upper(x, ew);
    const HiFloat m1 = rel_upper_margin(ew, u1);
    const HiFloat m2 = rel_upper_margin(ew, u2);
    const HiFloat m3 = rel_upper_margin(ew, u3);
    const HiFloat meq = agreement_margin(ueq, ew);
    return PointResult{{x, ew, u1, u2, u3, ueq, m1, m2, m3, meq},
                       min(min(m1, m2), min(m3, meq))};
  });
  absorb(r, points, 1);
  finalize(r);
  return r;
}

CheckReport check_lambert_quadratic(const GridSpec& grid, const CheckOptions& opts) {
  CheckReport r = make_report("lambert_quadratic", grid.describe(), "1e-12",
                              {"x", "exp_w", "proof_upper", "hoorfar_upper", "margin_proof_upper",
                               "margin_hoorfar_upper", "margin_quadratic_in_z", "margin"},
                              opts.workers);
  const auto points = evaluate_grid(grid, opts.workers, [](const HiFloat& x) {
    const HiFloat ew = exp_w(x);
    const HiFloat z = log1p(x);
    const HiFloat proof_upper = x * x / ((1 + x) * z) + 1;
    const HiFloat hh_upper = (2 * x + 1) / (1 + z);
    const HiFloat m1 = rel_upper_margin(ew, proof_upper);
    const HiFloat m2 = rel_upper_margin(ew, hh_upper);
    const HiFloat m3 = rel_upper_margin(hh_upper, proof_upper);
    return PointResult{{x, ew, proof_upper, hh_upper, m1, m2, m3}, min(min(m1, m2), m3)};
  });
  absorb(r, points, 1);
  count_violations(r, 4, "e^W(x) <= x^2/((1+x)log(1+x)) + 1");
  count_violations(r, 5, "e^W(x) <= (2x+1)/(1+log(1+x))");
  count_violations(r, 6, "(2x+1)/(1+z) <= x^2/((1+x)z) + 1");
  finalize(r);
  return r;
}

CheckReport check_log_sandwich(const GridSpec& grid, const CheckOptions& opts) {
  CheckReport r = make_report("log_sandwich", grid.describe(), "1e-12",
                              {"x", "z", "margin_lower", "margin_upper", "margin_topsoe", "margin"},
                              opts.workers);
  const auto points = evaluate_grid(grid, opts.workers, [](const HiFloat& x) {
    const HiFloat z = log1p(x);
    const HiFloat m1 = rel_upper_margin(x / (1 + x), z);
    const HiFloat m2 = rel_upper_margin(z, x);
    const HiFloat m3 = rel_upper_margin(x / z, 1 + x / 2);
    return PointResult{{x, z, m1, m2, m3}, min(min(m1, m2), m3)};
  });
  absorb(r, points, 1);
  finalize(r);
  return r;
}

CheckReport check_mgf_bound_chain(const Distribution& dist, unsigned k) {
  if (k < 1) throw DomainError("check_mgf_bound_chain needs k >= 1");
  CheckReport r = make_report("mgf_bound_chain", dist.describe() + " k=" + std::to_string(k),
                              "1e-10",
                              {"k", "mu", "t", "log_exact_normalized", "log_mgf_route",
                               "log_intermediate", "margin_bound", "margin_agreement", "margin"},
                              1);
  const HiFloat kf(k);
  const HiFloat mu = mean_of(dist);
  const HiFloat t = lambert_w0(kf / mu).w;
  const HiFloat log_exact = log_normalized_exact(dist, k);
  // log[ exp(mu(e^t - 1)) (k/(e t))^k / mu^k ]
  const HiFloat log_route = mu * expm1(t) + kf * (log(kf) - 1 - log(t)) - kf * log(mu);
  const HiFloat log_intermediate = mgf_intermediate_bound(kf, mu).log_value;
  const HiFloat m_bound = log_margin(log_exact, log_route);
  const HiFloat m_agree = -abs(expm1(log_route - log_intermediate));
  absorb(r, {PointResult{{kf, mu, t, log_exact, log_route, log_intermediate, m_bound, m_agree},
                         min(m_bound, m_agree)}},
         2);
  finalize(r);
  return r;
}

CheckReport check_proof_chain(const std::vector<std::pair<Distribution, unsigned>>& cases,
                              const CheckOptions& opts) {
  CheckReport r = make_report(
      "proof_chain_ordering", std::to_string(cases.size()) + " cases", "1e-10",
      {"k", "mu", "log_exact", "log_mgf", "log_theorem1", "log_poly", "log_exp", "margin_exact_mgf",
       "margin_mgf_theorem1", "margin_theorem1_poly", "margin_poly_exp", "margin"},
      opts.workers);
  const auto points = parallel_map<PointResult>(cases.size(), opts.workers, [&](std::size_t i) {
    const auto& [dist, k] = cases[i];
    const HiFloat kf(k);
    const HiFloat mu = mean_of(dist);
    const HiFloat exact = log_normalized_exact(dist, k);
    const HiFloat mgf = mgf_intermediate_bound(kf, mu).log_value;
    const HiFloat thm1 = theorem1_bound(kf, mu).log_value;
    const auto [poly, expo] = corollary_bounds(kf, mu);
    const HiFloat m1 = log_margin(exact, mgf);
    const HiFloat m2 = log_margin(mgf, thm1);
    const HiFloat m3 = log_margin(thm1, poly.log_value);
    const HiFloat m4 = log_margin(poly.log_value, expo.log_value);
    return PointResult{{kf, mu, exact, mgf, thm1, poly.log_value, expo.log_value, m1, m2, m3, m4},
                       min(min(m1, m2), min(m3, m4))};
  });
  absorb(r, points, 2);
  finalize(r);
  return r;
}

HiFloat log_mgf(const Distribution& dist, const HiFloat& t) {
  const HiFloat growth = expm1(t);
  return std::visit(
      [&](const auto& d) -> HiFloat {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          return HiFloat(d.mean) * growth;
        } else if constexpr (std::is_same_v<T, BinomialParams>) {
          return HiFloat(d.trials) * log1p(HiFloat(d.success) * growth);
        } else {
          HiFloat sum = 0;
          for (const Rational& p : d.probs) sum += log1p(HiFloat(p) * growth);
          return sum;
        }
      },
      dist.params());
}

CheckReport check_subpoissonian_mgf(const Distribution& dist, const GridSpec& t_grid,
                                    const CheckOptions& opts) {
  t_grid.validate();
  if (!(t_grid.min > 0)) throw DomainError("t grid must lie in (0, t_max]");
  CheckReport r = make_report("subpoissonian_mgf", dist.describe() + " t=" + t_grid.describe(),
                              "1e-12", {"t", "log_mgf", "log_envelope", "margin"}, opts.workers);
  const HiFloat mu = mean_of(dist);
  const auto points = evaluate_grid(t_grid, opts.workers, [&](const HiFloat& t) {
    const HiFloat lm = log_mgf(dist, t);
    const HiFloat le = mu * expm1(t);
    return PointResult{{t, lm, le}, log_margin(lm, le)};
  });
  absorb(r, points, 1);
  finalize(r);
  return r;
}

CheckReport check_exponential_counterexample(const HiFloat& mu, const GridSpec& t_grid,
                                             const CheckOptions& opts) {
  if (!(mu > 0)) throw DomainError("exponential mean must be positive");
  t_grid.validate();
  const HiFloat pole = log1p(1 / mu);
  if (!(HiFloat(t_grid.min) > 0) || !(HiFloat(t_grid.max) < pole))
    throw DomainError("t grid " + t_grid.describe() + " must lie inside (0, log(1 + 1/mu)) = (0, " +
                      pole.to_string(17) + ")");
  CheckReport r = make_report("exponential_counterexample",
                              "mu=" + mu.to_string(17) + " t=" + t_grid.describe(), "0",
                              {"t", "log_mgf", "log_envelope", "margin"}, opts.workers);
  r.strict = true;
  const auto points = evaluate_grid(t_grid, opts.workers, [&](const HiFloat& t) {
    const HiFloat x = mu * expm1(t);
    const HiFloat lm = -log1p(-x);
    // (m - envelope) / envelope, must be strictly positive.
    return PointResult{{t, lm, x}, expm1(lm - x)};
  });
  absorb(r, points, 1);
  finalize(r);
  return r;
}

CheckReport check_theorem2(long mu_max, const GridSpec& multiplier_grid, const CheckOptions& opts) {
  if (mu_max < 1) throw DomainError("check_theorem2 needs mu_max >= 1");
  const std::vector<double> ms = multiplier_grid.points();
  struct Point {
    long mu;
    long k;
  };
  std::vector<Point> pts;
  for (long mu = 1; mu <= mu_max; ++mu)
    for (double m : ms) pts.push_back({mu, std::max(1L, std::lround(m * static_cast<double>(mu)))});
  CheckReport r = make_report("theorem2_bell_power_lower",
                              "mu=1.." + std::to_string(mu_max) + " k=round(m mu), m=" +
                                  multiplier_grid.describe(),
                              "1e-9", {"mu", "k", "log_exact_normalized", "log_lower", "margin"},
                              opts.workers);
  // Build the Stirling rows once, outside the workers.
  long k_max = 1;
  for (const Point& p : pts) k_max = std::max(k_max, p.k);
  StirlingTable::shared().row(static_cast<unsigned>(k_max));
  const auto points = parallel_map<PointResult>(pts.size(), opts.workers, [&](std::size_t i) {
    const HiFloat mu(pts[i].mu);
    const HiFloat kf(pts[i].k);
    const Rational exact = poisson_raw_moment(Rational(pts[i].mu), static_cast<unsigned>(pts[i].k));
    const HiFloat log_exact = log(HiFloat(exact)) - kf * log(mu);
    const HiFloat log_lower = log_bell_power(kf, mu);
    return PointResult{{mu, kf, log_exact, log_lower}, log_margin(log_lower, log_exact)};
  });
  absorb(r, points, 2);
  finalize(r);
  return r;
}

CheckReport conjecture_sweep(const GridSpec& ratio_grid, const GridSpec& mu_grid,
                             const CheckOptions& opts) {
  const std::vector<double> ratios = ratio_grid.points();
  const std::vector<double> mus = mu_grid.points();
  CheckReport r = make_report("conjecture_sweep",
                              "k/mu=" + ratio_grid.describe() + " mu=" + mu_grid.describe(), "1e-12",
                              {"mu", "k_over_mu", "k", "log_exact_normalized", "log_lower",
                               "log_upper", "margin_lower", "margin_upper", "margin"},
                              opts.workers);
  r.report_only = true;

  // Per-ratio Bell numbers B_B and B_{B+1}; they do not depend on mu.
  struct RatioTerms {
    HiFloat log_bell;
    HiFloat log_bell_shifted;
  };
  const auto ratio_terms = parallel_map<RatioTerms>(ratios.size(), opts.workers, [&](std::size_t i) {
    const HiFloat b(ratios[i]);
    return RatioTerms{log(bell_dobinski(b).value), log(bell_dobinski(b + 1).value)};
  });

  struct Eval {
    PointResult point;
    bool has_lower;
  };
  const std::size_t n = mus.size() * ratios.size();
  const auto evals = parallel_map<Eval>(n, opts.workers, [&](std::size_t idx) {
    const HiFloat mu(mus[idx / ratios.size()]);
    const std::size_t j = idx % ratios.size();
    const HiFloat b(ratios[j]);
    const HiFloat k = b * mu;
    const HiFloat mid = log(touchard_dobinski(k, mu).value) - k * log(mu);
    const HiFloat& log_bb = ratio_terms[j].log_bell;
    const HiFloat& log_bb1 = ratio_terms[j].log_bell_shifted;
    if (mu >= 1) {
      const HiFloat lower = mu * log_bb;
      const HiFloat upper = k / (b + 1) * log_bb1;
      const HiFloat ml = log_margin(lower, mid);
      const HiFloat mu_ = log_margin(mid, upper);
      return Eval{PointResult{{mu, b, k, mid, lower, upper, ml, mu_}, min(ml, mu_)}, true};
    }
    const HiFloat upper = mu * log_bb;
    const HiFloat mu_ = log_margin(mid, upper);
    return Eval{PointResult{{mu, b, k, mid, HiFloat(0), upper, HiFloat(0), mu_}, mu_}, false};
  });

  std::vector<PointResult> points;
  points.reserve(evals.size());
  for (const Eval& e : evals) {
    const auto& v = e.point.values;
    const auto add_finding = [&](const std::string& which, const HiFloat& m) {
      if (m < -r.tolerance)
        r.findings.push_back(Finding{{{"mu", v[0]}, {"k_over_mu", v[1]}, {"k", v[2]}}, which, m});
    };
    if (e.has_lower) {
      add_finding("B_{k/mu}^{mu/k} <= B(k,mu)^{1/k}/mu", v[6]);
      add_finding("B(k,mu)^{1/k}/mu <= B_{k/mu+1}^{1/(k/mu+1)}", v[7]);
    } else {
      add_finding("B(k,mu)^{1/k}/mu <= B_{k/mu}^{mu/k} (mu <= 1)", v[7]);
    }
    points.push_back(e.point);
  }
  absorb(r, points, 3);
  // Blank the columns that do not apply in the reversed (mu < 1) region.
  for (std::size_t i = 0; i < evals.size(); ++i) {
    if (!evals[i].has_lower) {
      r.rows[i][4].clear();
      r.rows[i][6].clear();
    }
  }
  r.notes.push_back(std::to_string(r.findings.size()) + " violation(s) of the conjectured bracket");
  finalize(r);
  return r;
}

MCEstimate monte_carlo_moment(const Distribution& dist, unsigned k, long samples,
                              std::uint64_t seed, unsigned workers) {
  if (samples < kMinMonteCarloSamples)
    throw DomainError("Monte Carlo needs at least " + std::to_string(kMinMonteCarloSamples) +
                      " samples");
  if (k < 1) throw DomainError("Monte Carlo moment needs k >= 1");
  workers = std::max(1u, workers);
  const Sampler sampler(dist);
  const double mu = dist.mean().get_d();
  const double kd = static_cast<double>(k);
  struct Sums {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  const auto sums = parallel_map<Sums>(workers, workers, [&](std::size_t w) {
    const long begin = static_cast<long>(static_cast<unsigned long>(samples) * w / workers);
    const long end = static_cast<long>(static_cast<unsigned long>(samples) * (w + 1) / workers);
    Rng rng(derive_worker_seed(seed, w));
    Sums s;
    for (long i = begin; i < end; ++i) {
      const double y = std::pow(static_cast<double>(sampler(rng)) / mu, kd);
      s.sum += y;
      s.sum_sq += y * y;
    }
    return s;
  });
  Sums total;
  for (const Sums& s : sums) {
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
  }
  const double n = static_cast<double>(samples);
  const double mean = total.sum / n;
  const double var = std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1.0));
  const double se = std::sqrt(var / n);
  MCEstimate est;
  est.distribution = dist.describe();
  est.k = k;
  est.sample_count = samples;
  est.seed = seed;
  est.workers = workers;
  est.rng_algorithm = std::string(kRngAlgorithm);
  est.sampler_method = sampler.method();
  est.estimate = mean;
  est.std_error = se;
  est.ci99_half_width = 2.5758293035489004 * se;
  return est;
}

CheckReport check_monte_carlo(const std::vector<std::pair<Distribution, unsigned>>& cases,
                              long samples, std::uint64_t seed, unsigned workers) {
  CheckReport r = make_report("monte_carlo", std::to_string(cases.size()) + " cases, " +
                                                 std::to_string(samples) + " samples, seed " +
                                                 std::to_string(seed),
                              "0",
                              {"case", "k", "estimate", "std_error", "exact", "margin"}, workers);
  std::vector<PointResult> points;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [dist, k] = cases[i];
    const MCEstimate est = monte_carlo_moment(dist, k, samples, seed + i, workers);
    const HiFloat exact = exp(log_normalized_exact(dist, k));
    const HiFloat estimate(est.estimate);
    const HiFloat se(est.std_error);
    // 3 standard errors minus the deviation, relative to the exact value.
    const HiFloat margin = (3 * se - abs(estimate - exact)) / exact;
    points.push_back(PointResult{{HiFloat(static_cast<long>(i)), HiFloat(k), estimate, se, exact},
                                 margin});
    r.notes.push_back("case " + std::to_string(i) + ": " + dist.describe() + ", sampler " +
                      est.sampler_method + ", rng " + est.rng_algorithm + ", seed " +
                      std::to_string(seed + i) + ", workers " + std::to_string(est.workers));
  }
  absorb(r, points, 2);
  finalize(r);
  return r;
}

bool is_suite_name(std::string_view name) {
  return std::find(std::begin(kSuiteNames), std::end(kSuiteNames), name) != std::end(kSuiteNames);
}

std::vector<std::pair<Distribution, unsigned>> standard_chain_cases() {
  std::vector<std::pair<Distribution, unsigned>> cases;
  for (const char* mu : {"1/10", "1/2", "1", "5", "10", "100"})
    for (unsigned k = 1; k <= 50; ++k) cases.emplace_back(Distribution::poisson(parse_rational(mu)), k);
  for (long n : {5L, 20L, 100L})
    for (const char* p : {"1/10", "1/2", "9/10"})
      for (unsigned k = 1; k <= std::min<long>(n, 30); ++k)
        cases.emplace_back(Distribution::binomial(n, parse_rational(p)), k);
  return cases;
}

std::vector<Distribution> random_bernoulli_sums(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(2, 20);
  std::uniform_int_distribution<int> numerator(1, 1000);
  std::vector<Distribution> out;
  for (int i = 0; i < count; ++i) {
    std::vector<Rational> probs;
    const int m = length(rng);
    for (int j = 0; j < m; ++j) {
      Rational p(numerator(rng), 1000);
      p.canonicalize();
      probs.push_back(p);
    }
    out.push_back(Distribution::bernoulli_sum(std::move(probs)));
  }
  return out;
}

std::vector<CheckReport> run_suite(std::string_view suite, const SuiteConfig& cfg) {
  if (!is_suite_name(suite)) throw DomainError("unknown suite '" + std::string(suite) + "'");
  const CheckOptions opts{cfg.workers};
  std::vector<CheckReport> out;
  const auto wants = [&](std::string_view name) { return suite == "all" || suite == name; };
  const auto run = [&](auto&& fn) { out.push_back(run_with_escalation(cfg.bits, fn)); };

  if (wants("g")) {
    run([&] { return check_g_nonpositive(cfg.x_grid, opts); });
    run([&] { return check_gprime_form(cfg.derivative_grid, opts); });
    run([&] { return check_log_ratio_bound(cfg.x_grid, opts); });
    run([&] { return check_gprime_nonpositive(cfg.x_grid, opts); });
  }
  if (wants("lambert")) {
    run([&] { return check_lambert_residual(cfg.lambert_grid, opts); });
    run([&] { return check_lambert_derivative(cfg.derivative_grid, opts); });
    run([&] { return check_hoorfar_hassani(cfg.x_grid, opts); });
    run([&] { return check_lambert_quadratic(cfg.x_grid, opts); });
  }
  if (wants("logs")) run([&] { return check_log_sandwich(cfg.x_grid, opts); });
  if (wants("mgf")) {
    const auto cases = standard_chain_cases();
    run([&] { return check_proof_chain(cases, opts); });
    run([&] {
      std::vector<std::pair<std::string, CheckReport>> parts;
      for (const auto& [dist, k] : cases) parts.emplace_back(dist.describe(), check_mgf_bound_chain(dist, k));
      return merge_reports("mgf_bound_chain", parts);
    });
  }
  if (wants("subpoisson")) {
    run([&] {
      std::vector<Distribution> dists{
          Distribution::poisson(1),
          Distribution::poisson(10),
          Distribution::binomial(10, parse_rational("1/2")),
          Distribution::binomial(100, parse_rational("3/10")),
          Distribution::binomial(100, parse_rational("9/10")),
          Distribution::bernoulli_sum({parse_rational("1/3"), parse_rational("2/3")}),
      };
      for (auto& d : random_bernoulli_sums(cfg.random_bernoulli_sums, cfg.seed)) dists.push_back(d);
      std::vector<std::pair<std::string, CheckReport>> parts;
      for (const auto& d : dists) parts.emplace_back(d.describe(), check_subpoissonian_mgf(d, cfg.t_grid, opts));
      return merge_reports("subpoissonian_mgf", parts);
    });
  }
  if (wants("counterexample")) {
    run([&] {
      std::vector<std::pair<std::string, CheckReport>> parts;
      for (const char* m : {"1/2", "1", "2"}) {
        const HiFloat mu(parse_rational(m));
        const double pole = log1p(1 / mu).to_double();
        const GridSpec grid = log_grid(pole * 1e-4, pole * (1 - 1e-4), 1000);
        parts.emplace_back(std::string("Exponential(mean ") + m + ")",
                           check_exponential_counterexample(mu, grid, opts));
      }
      return merge_reports("exponential_counterexample", parts);
    });
  }
  if (wants("theorem2"))
    run([&] { return check_theorem2(cfg.theorem2_mu_max, cfg.theorem2_multipliers, opts); });
  if (wants("conjecture")) {
    run([&] {
      CheckReport r = conjecture_sweep(cfg.ratio_grid, cfg.mu_grid, opts);
      r.check_name = "conjecture_bracket";
      const auto crossing = locate_conjecture_mgf_crossing(HiFloat(1), HiFloat(1000));
      r.notes.push_back(crossing ? "conjectured upper exponent falls below the mgf exponent f(k/mu) at k/mu ~ " +
                                       crossing->to_string(12)
                                 : std::string("no crossing of the conjectured upper bound below the mgf bound on k/mu in [1, 1000]"));
      return r;
    });
    run([&] {
      CheckReport r = conjecture_sweep(cfg.ratio_grid, cfg.reversed_mu_grid, opts);
      r.check_name = "conjecture_reversed";
      return r;
    });
  }
  if (wants("montecarlo")) {
    run([&] {
      const std::vector<std::pair<Distribution, unsigned>> cases{
          {Distribution::binomial(100, parse_rational("3/10")), 3},
          {Distribution::poisson(1), 4},
          {Distribution::poisson(50), 2},
          {Distribution::binomial(5000, parse_rational("1/2")), 2},
          {Distribution::bernoulli_sum({1, 1, 1}), 2},
      };
      return check_monte_carlo(cases, cfg.mc_samples, cfg.seed, cfg.workers);
    });
  }
  return out;
}

}  // namespace subpoisson
