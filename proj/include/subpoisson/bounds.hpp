#pragma once

// Closed-form upper and lower bounds on the normalized moment E (X/mu)^k of
// sub-Poissonian variables. Every evaluator works in natural-log space; use
// to_raw() to move to E X^k.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subpoisson/bell_real.hpp"
#include "subpoisson/exact_moments.hpp"
#include "subpoisson/hifloat.hpp"

namespace subpoisson {

enum class BoundKind {
  Theorem1,
  CorollaryPoly,
  CorollaryExp,
  MgfIntermediate,
  LatalaLower,
  LatalaUpper,
  BerendTassa,
  BerendTassaCap,
  PoissonLower,
  BinomialLower,
  BellPowerLower,
  ConjectureLower,
  ConjectureUpper,
};

std::string_view to_string(BoundKind kind);
std::optional<BoundKind> parse_bound_kind(std::string_view name);
/// True for kinds that bound the moment from below.
bool is_lower_bound(BoundKind kind);

enum class BoundStatus {
  Ok,
  Overflow,  // |log_value| too large to materialize the value
  Vacuous,   // the bound expression is <= 0; log_value is -inf
};

struct BoundResult {
  BoundKind kind;
  HiFloat log_value;
  std::optional<HiFloat> value;
  BoundStatus status = BoundStatus::Ok;
};

/// Values are materialized only while |log_value| stays below this.
inline constexpr double kMaterializeLimit = 700.0;

BoundResult make_bound(BoundKind kind, HiFloat log_value);

/// Adds k log mu: converts a bound on E (X/mu)^k into one on E X^k.
BoundResult to_raw(const BoundResult& normalized, const HiFloat& k, const HiFloat& mu);

/// (B / log(1 + B))^k with B = k/mu.
BoundResult theorem1_bound(const HiFloat& k, const HiFloat& mu);

/// (1 + k/(2mu))^k and exp(k^2/(2mu)).
std::pair<BoundResult, BoundResult> corollary_bounds(const HiFloat& k, const HiFloat& mu);

/// exp(k f(B)) with f(B) = 1/t + t - 1 - 1/B and t = W(B).
BoundResult mgf_intermediate_bound(const HiFloat& k, const HiFloat& mu);

struct LatalaConstants {
  HiFloat lower;  // c
  HiFloat upper;  // C
};

/// Illustrative constants for display sweeps; no numeric values are known.
LatalaConstants illustrative_latala_constants();

/// (c B / log(1 + B))^k and (C B / log(1 + B))^k. Requires 0 < c <= 1 <= C.
std::pair<BoundResult, BoundResult> latala_bounds(const HiFloat& k, const HiFloat& mu,
                                                  const LatalaConstants& constants);

/// B_k max{mu, mu^k} / mu^k; with use_cap, B_k is replaced by
/// (0.792 k / log(k + 1))^k.
BoundResult berend_tassa_bound(unsigned k, const HiFloat& mu, bool use_cap);

/// 1 + k(k-1)/(2mu).
BoundResult poisson_lower(unsigned k, const HiFloat& mu);

/// 1 + C(k,2) (1-p)/(np) (1 - C(k,2)/n); Vacuous when that is <= 0.
BoundResult binomial_lower(long n, const Rational& p, unsigned k);

/// True when k exceeds n, where the displayed binomial chain is used outside
/// the range its first step assumed.
bool binomial_lower_out_of_range(long n, unsigned k);

/// B_{k/mu}^mu as a bound result (integer or real mu > 0).
BoundResult bell_power_lower_bound(const HiFloat& k, const HiFloat& mu,
                                   const DobinskiOptions& opts = {});

/// Conjectured bracket for mu >= 1, in k-th power form:
/// lower B_{k/mu}^mu, upper B_{k/mu+1}^{k/(k/mu+1)}.
std::pair<BoundResult, BoundResult> conjecture_bounds(const HiFloat& k, const HiFloat& mu,
                                                      const DobinskiOptions& opts = {});

/// The reversed conjectured upper bound B_{k/mu}^mu for 0 < mu <= 1.
BoundResult conjecture_reversed_upper(const HiFloat& k, const HiFloat& mu,
                                      const DobinskiOptions& opts = {});

/// Per-unit-k exponents of the conjectured upper bound and of the mgf
/// intermediate, as functions of B = k/mu alone:
/// log B_{B+1} / (B + 1) and f(B).
std::pair<HiFloat, HiFloat> conjecture_vs_mgf_exponents(const HiFloat& ratio,
                                                        const DobinskiOptions& opts = {});

/// First B on a log grid over [lo, hi] where the conjectured upper exponent
/// falls below f(B), refined by bisection. Empty if no crossing is found.
std::optional<HiFloat> locate_conjecture_mgf_crossing(const HiFloat& lo, const HiFloat& hi,
                                                      int grid_points = 200);

}  // namespace subpoisson
