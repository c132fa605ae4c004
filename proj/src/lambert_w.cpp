#include "subpoisson/lambert_w.hpp"

#include <cmath>

#include "subpoisson/errors.hpp"

namespace subpoisson {
namespace {

constexpr int kMaxIterations = 100;

// w0 = x below 1, log x - log log x from e on, linear in between. The two
// formulas meet at 1 on [1, e], so the blend is the constant 1 there.
HiFloat initial_guess(const HiFloat& x) {
  if (x < 1) return x;
  const HiFloat e = HiFloat::euler();
  if (x >= e) {
    const HiFloat lx = log(x);
    return lx - log(lx);
  }
  const HiFloat s = (x - 1) / (e - 1);
  const HiFloat at_one = 1;
  const HiFloat at_e = 1;  // log e - log log e
  return at_one + s * (at_e - at_one);
}

}  // namespace

HiFloat default_lambert_tolerance() { return HiFloat::parse("1e-30"); }

HiFloat lambert_tolerance_floor(Bits bits) {
  // A few hundred ulps: the residual w e^w - x cannot be resolved below this.
  return HiFloat(unit_roundoff(bits)) * 1024;
}

WValue lambert_w0(const HiFloat& x) { return lambert_w0(x, default_lambert_tolerance()); }

WValue lambert_w0(const HiFloat& x, const HiFloat& rel_tol) {
  if (x.is_nan() || x < 0)
    throw DomainError("lambert_w0 is implemented for x >= 0 only, got " + x.to_string(17));
  if (rel_tol < lambert_tolerance_floor(x.precision()))
    throw PrecisionError("lambert_w0 tolerance " + rel_tol.to_string(6) +
                         " is below the floor for " + std::to_string(x.precision()) +
                         "-bit precision");
  if (x.is_zero()) return WValue{x, HiFloat(0), HiFloat(0), 0};
  if (!x.is_finite()) throw DomainError("lambert_w0 argument is not finite");

  HiFloat w = initial_guess(x);
  HiFloat residual = HiFloat::infinity();
  for (int it = 1; it <= kMaxIterations; ++it) {
    const HiFloat ew = exp(w);
    const HiFloat f = w * ew - x;
    residual = abs(f) / x;
    if (residual <= rel_tol) {
      // dW/W = (dx/x) / (1 + W): input error and residual both map through it.
      w.set_rel_error((x.rel_error() + residual.to_double()) / (1 + w.to_double()) +
                      unit_roundoff(w.precision()));
      return WValue{x, std::move(w), std::move(residual), it};
    }
    const HiFloat wp1 = w + 1;
    w -= f / (ew * wp1 - (w + 2) * f / (2 * wp1));
    if (!w.is_finite()) break;
  }
  throw NumericError("lambert_w0 did not converge for x = " + x.to_string(17), w.to_string(30),
                     residual.to_string(6));
}

HiFloat exp_w(const HiFloat& x) { return exp_w(x, default_lambert_tolerance()); }

HiFloat exp_w(const HiFloat& x, const HiFloat& rel_tol) {
  if (x.is_zero()) return HiFloat(1);
  const WValue v = lambert_w0(x, rel_tol);
  return x / v.w;
}

HiFloat hoorfar_hassani_upper(const HiFloat& x, const HiFloat& y) {
  const HiFloat inv_e = 1 / HiFloat::euler();
  if (!(y > inv_e))
    throw DomainError("hoorfar_hassani_upper needs y > 1/e, got y = " + y.to_string(17));
  if (!(x > -inv_e))
    throw DomainError("hoorfar_hassani_upper needs x > -1/e, got x = " + x.to_string(17));
  if (!(x + y > 0)) throw DomainError("hoorfar_hassani_upper needs x + y > 0");
  return (x + y) / (1 + log(y));
}

}  // namespace subpoisson
