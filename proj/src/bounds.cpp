#include "subpoisson/bounds.hpp"

#include <array>

#include "subpoisson/errors.hpp"
#include "subpoisson/lambert_w.hpp"

namespace subpoisson {
namespace {

struct KindName {
  BoundKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 13> kKindNames{{
    {BoundKind::Theorem1, "theorem1"},
    {BoundKind::CorollaryPoly, "corollary-poly"},
    {BoundKind::CorollaryExp, "corollary-exp"},
    {BoundKind::MgfIntermediate, "mgf"},
    {BoundKind::LatalaLower, "latala-lower"},
    {BoundKind::LatalaUpper, "latala-upper"},
    {BoundKind::BerendTassa, "berend-tassa"},
    {BoundKind::BerendTassaCap, "berend-tassa-cap"},
    {BoundKind::PoissonLower, "poisson-lower"},
    {BoundKind::BinomialLower, "binomial-lower"},
    {BoundKind::BellPowerLower, "bell-power-lower"},
    {BoundKind::ConjectureLower, "conjecture-lower"},
    {BoundKind::ConjectureUpper, "conjecture-upper"},
}};

void require_positive(const HiFloat& v, const char* name) {
  if (v.is_nan() || !(v > 0) || !v.is_finite())
    throw DomainError(std::string(name) + " must be finite and positive, got " + v.to_string(17));
}

// log(B / log(1 + B)), positive for every B > 0.
HiFloat log_ratio(const HiFloat& b) { return log(b / log1p(b)); }

}  // namespace

std::string_view to_string(BoundKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "unknown";
}

std::optional<BoundKind> parse_bound_kind(std::string_view name) {
  for (const auto& kn : kKindNames)
    if (kn.name == name) return kn.kind;
  return std::nullopt;
}

bool is_lower_bound(BoundKind kind) {
  switch (kind) {
    case BoundKind::LatalaLower:
    case BoundKind::PoissonLower:
    case BoundKind::BinomialLower:
    case BoundKind::BellPowerLower:
    case BoundKind::ConjectureLower:
      return true;
    default:
      return false;
  }
}

BoundResult make_bound(BoundKind kind, HiFloat log_value) {
  if (log_value.is_nan())
    throw NumericError(std::string(to_string(kind)) + " bound evaluated to NaN", "nan", "nan");
  BoundResult r{kind, std::move(log_value), std::nullopt, BoundStatus::Ok};
  if (r.log_value.is_finite() && abs(r.log_value) < kMaterializeLimit) {
    r.value = exp(r.log_value);
  } else if (r.log_value.is_finite() || r.log_value > 0) {
    r.status = BoundStatus::Overflow;
  } else {
    r.status = BoundStatus::Vacuous;
    r.value = HiFloat(0);
  }
  return r;
}

BoundResult to_raw(const BoundResult& normalized, const HiFloat& k, const HiFloat& mu) {
  if (normalized.status == BoundStatus::Vacuous) return normalized;
  return make_bound(normalized.kind, normalized.log_value + k * log(mu));
}

BoundResult theorem1_bound(const HiFloat& k, const HiFloat& mu) {
  require_positive(k, "k");
  require_positive(mu, "mu");
  return make_bound(BoundKind::Theorem1, k * log_ratio(k / mu));
}

std::pair<BoundResult, BoundResult> corollary_bounds(const HiFloat& k, const HiFloat& mu) {
  require_positive(k, "k");
  require_positive(mu, "mu");
  const HiFloat half_ratio = k / (2 * mu);
  return {make_bound(BoundKind::CorollaryPoly, k * log1p(half_ratio)),
          make_bound(BoundKind::CorollaryExp, k * half_ratio)};
}

BoundResult mgf_intermediate_bound(const HiFloat& k, const HiFloat& mu) {
  require_positive(k, "k");
  require_positive(mu, "mu");
  const HiFloat b = k / mu;
  const HiFloat t = lambert_w0(b).w;
  // 1/t - 1/B = (e^t - 1)/B because e^t = B/t.
  const HiFloat f = expm1(t) / b + t - 1;
  return make_bound(BoundKind::MgfIntermediate, k * f);
}

LatalaConstants illustrative_latala_constants() {
  return {HiFloat::parse("0.5"), HiFloat(2)};
}

std::pair<BoundResult, BoundResult> latala_bounds(const HiFloat& k, const HiFloat& mu,
                                                  const LatalaConstants& constants) {
  require_positive(k, "k");
  require_positive(mu, "mu");
  if (!(constants.lower > 0) || !(constants.lower <= 1) || !(constants.upper >= 1) ||
      !constants.upper.is_finite())
    throw DomainError("Latala constants need 0 < c <= 1 <= C, got c = " +
                      constants.lower.to_string(17) + ", C = " + constants.upper.to_string(17));
  const HiFloat base = log_ratio(k / mu);
  return {make_bound(BoundKind::LatalaLower, k * (log(constants.lower) + base)),
          make_bound(BoundKind::LatalaUpper, k * (log(constants.upper) + base))};
}

BoundResult berend_tassa_bound(unsigned k, const HiFloat& mu, bool use_cap) {
  if (k < 1) throw DomainError("berend_tassa_bound needs k >= 1");
  require_positive(mu, "mu");
  const HiFloat kf(k);
  const HiFloat log_mu = log(mu);
  HiFloat log_bell;
  if (use_cap) {
    log_bell = kf * log(HiFloat::parse("0.792") * kf / log1p(kf));
  } else {
    log_bell = log(HiFloat(bell_number(k)));
  }
  const HiFloat log_max = max(log_mu, kf * log_mu);
  return make_bound(use_cap ? BoundKind::BerendTassaCap : BoundKind::BerendTassa,
                    log_bell + log_max - kf * log_mu);
}

BoundResult poisson_lower(unsigned k, const HiFloat& mu) {
  require_positive(mu, "mu");
  const HiFloat kf(k);
  return make_bound(BoundKind::PoissonLower, log1p(kf * (kf - 1) / (2 * mu)));
}

bool binomial_lower_out_of_range(long n, unsigned k) { return static_cast<long>(k) > n; }

BoundResult binomial_lower(long n, const Rational& p, unsigned k) {
  if (n <= 0) throw DomainError("binomial trials must be positive");
  if (p <= 0 || p > 1) throw DomainError("binomial success probability must lie in (0, 1]");
  if (k < 1) throw DomainError("binomial_lower needs k >= 1");
  const Rational pairs(static_cast<long>(k) * (static_cast<long>(k) - 1), 2);
  Rational value = 1 + pairs * (1 - p) / (Rational(n) * p) * (1 - pairs / Rational(n));
  value.canonicalize();
  if (value <= 0) return make_bound(BoundKind::BinomialLower, HiFloat::infinity(-1));
  return make_bound(BoundKind::BinomialLower, log(HiFloat(value)));
}

BoundResult bell_power_lower_bound(const HiFloat& k, const HiFloat& mu,
                                   const DobinskiOptions& opts) {
  return make_bound(BoundKind::BellPowerLower, log_bell_power(k, mu, opts));
}

std::pair<BoundResult, BoundResult> conjecture_bounds(const HiFloat& k, const HiFloat& mu,
                                                      const DobinskiOptions& opts) {
  require_positive(k, "k");
  if (!(mu >= 1))
    throw DomainError("conjecture_bounds needs mu >= 1; use conjecture_reversed_upper for mu <= 1");
  const HiFloat ratio = k / mu;
  const HiFloat shifted = ratio + 1;
  return {make_bound(BoundKind::ConjectureLower, log_bell_power(k, mu, opts)),
          make_bound(BoundKind::ConjectureUpper,
                     k / shifted * log(bell_dobinski(shifted, opts).value))};
}

BoundResult conjecture_reversed_upper(const HiFloat& k, const HiFloat& mu,
                                      const DobinskiOptions& opts) {
  require_positive(k, "k");
  if (!(mu > 0) || !(mu <= 1))
    throw DomainError("conjecture_reversed_upper needs 0 < mu <= 1");
  return make_bound(BoundKind::ConjectureUpper, log_bell_power(k, mu, opts));
}

std::pair<HiFloat, HiFloat> conjecture_vs_mgf_exponents(const HiFloat& ratio,
                                                        const DobinskiOptions& opts) {
  const HiFloat shifted = ratio + 1;
  const HiFloat conj = log(bell_dobinski(shifted, opts).value) / shifted;
  const HiFloat mgf = mgf_intermediate_bound(ratio, HiFloat(1)).log_value / ratio;
  return {conj, mgf};
}

std::optional<HiFloat> locate_conjecture_mgf_crossing(const HiFloat& lo, const HiFloat& hi,
                                                      int grid_points) {
  require_positive(lo, "lo");
  if (!(hi > lo) || grid_points < 2) throw DomainError("crossing search needs lo < hi");
  const auto gap = [](const HiFloat& b) {
    const auto [conj, mgf] = conjecture_vs_mgf_exponents(b);
    return conj - mgf;
  };
  const HiFloat log_lo = log(lo);
  const HiFloat step = (log(hi) - log_lo) / (grid_points - 1);
  HiFloat prev_b = lo;
  bool prev_above = gap(lo) >= 0;
  for (int i = 1; i < grid_points; ++i) {
    const HiFloat b = i == grid_points - 1 ? hi : exp(log_lo + step * i);
    const bool above = gap(b) >= 0;
    if (prev_above && !above) {
      HiFloat a = prev_b;
      HiFloat c = b;
      for (int it = 0; it < 80; ++it) {
        const HiFloat m = (a + c) / 2;
        (gap(m) >= 0 ? a : c) = m;
      }
      return c;
    }
    prev_b = b;
    prev_above = above;
  }
  return std::nullopt;
}

}  // namespace subpoisson
