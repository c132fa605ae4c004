#pragma once

// Real-argument Bell numbers and Touchard polynomials by Dobinski summation:
//
//   B(x, mu) = e^{-mu} sum_{i >= 0} i^x mu^i / i!,   B_x = B(x, 1).
//
// For x > 0 the i = 0 term is 0; for x = 0 it is 1 (0^0 = 1). Consequently
// B_x -> 1 - 1/e as x -> 0+, while B_0 = 1.

#include "subpoisson/hifloat.hpp"

namespace subpoisson {

struct DobinskiOptions {
  /// Relative truncation tolerance; certified by a geometric tail bound.
  HiFloat rel_tol = HiFloat::parse("1e-30");
  /// Largest accepted order x. Raising it is the caller's explicit choice.
  HiFloat max_order = 10000;
};

struct DobinskiResult {
  HiFloat x;
  HiFloat mu;
  HiFloat value;
  long terms_used = 0;
  HiFloat tail_bound;  // certified upper bound on value - (truncated sum)
};

/// Smallest rel_tol accepted at `bits` of precision.
HiFloat dobinski_tolerance_floor(Bits bits);

/// B(x, mu) for real x >= 0 and mu > 0.
///
/// Terms t_i are summed until i >= ceil(x) + 2, the term ratio
/// r_{i+1} = (1 + 1/(i+1))^x mu / (i + 2) is below 1, and the geometric tail
/// t_{i+1} / (1 - r_{i+1}) is at most rel_tol times the partial sum. The
/// ratio is decreasing in i, so that tail bound is rigorous.
DobinskiResult touchard_dobinski(const HiFloat& x, const HiFloat& mu,
                                 const DobinskiOptions& opts = {});

/// Real-argument Bell number B_x.
DobinskiResult bell_dobinski(const HiFloat& x, const DobinskiOptions& opts = {});

/// B_{k/mu}^mu for integer mu >= 1, computed as exp(mu log B_{k/mu}).
HiFloat bell_power_lower(const HiFloat& k, long mu, const DobinskiOptions& opts = {});

/// mu log B_{k/mu} for real mu > 0 (the log of the same quantity).
HiFloat log_bell_power(const HiFloat& k, const HiFloat& mu, const DobinskiOptions& opts = {});

}  // namespace subpoisson
