#pragma once

// Principal branch of the Lambert W function on x >= 0, and the
// Hoorfar-Hassani upper bound on e^{W(x)}.

#include "subpoisson/hifloat.hpp"

namespace subpoisson {

struct WValue {
  HiFloat x;
  HiFloat w;
  HiFloat residual;  // |w e^w - x| / x, zero when x = 0
  int iterations = 0;
};

/// Default relative tolerance on the residual of w e^w = x.
HiFloat default_lambert_tolerance();

/// Smallest tolerance accepted at `bits` of precision.
HiFloat lambert_tolerance_floor(Bits bits);

/// Solves w e^w = x for w >= 0 by Halley iteration with at most 100 steps.
///
/// Throws DomainError for x < 0, PrecisionError for a tolerance below the
/// precision floor, and NumericError (carrying the last iterate and residual) on non-convergence.
WValue lambert_w0(const HiFloat& x, const HiFloat& rel_tol);
WValue lambert_w0(const HiFloat& x);

/// e^{W(x)} = x / W(x) for x > 0, and 1 at x = 0.
HiFloat exp_w(const HiFloat& x);
HiFloat exp_w(const HiFloat& x, const HiFloat& rel_tol);

/// (x + y) / (1 + log y), an upper bound on e^{W(x)} valid for y > 1/e and
/// x > -1/e. Equal to e^{W(x)} at y = e^{W(x)}.
HiFloat hoorfar_hassani_upper(const HiFloat& x, const HiFloat& y);

}  // namespace subpoisson
