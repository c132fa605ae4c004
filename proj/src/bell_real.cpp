#include "subpoisson/bell_real.hpp"

#include "subpoisson/errors.hpp"

namespace subpoisson {

HiFloat dobinski_tolerance_floor(Bits bits) { return HiFloat(unit_roundoff(bits)) * 1024; }

DobinskiResult touchard_dobinski(const HiFloat& x, const HiFloat& mu,
                                 const DobinskiOptions& opts) {
  if (x.is_nan() || x < 0 || !x.is_finite())
    throw DomainError("Dobinski order must be finite and >= 0, got " + x.to_string(17));
  if (mu.is_nan() || mu <= 0 || !mu.is_finite())
    throw DomainError("Dobinski mean must be finite and > 0, got " + mu.to_string(17));
  if (x > opts.max_order)
    throw DomainError("Dobinski order " + x.to_string(17) + " exceeds the cap " +
                      opts.max_order.to_string(6) + "; raise the cap explicitly");
  const Bits bits = std::max(x.precision(), mu.precision());
  if (opts.rel_tol < dobinski_tolerance_floor(bits))
    throw PrecisionError("Dobinski tolerance " + opts.rel_tol.to_string(6) +
                         " is below the floor for " + std::to_string(bits) + "-bit precision");

  const long min_terms = x.to_long_ceil() + 2;
  const HiFloat log_mu = log(mu);
  HiFloat partial = x.is_zero() ? HiFloat(1) : HiFloat(0);
  HiFloat log_factorial = 0;
  HiFloat tail;
  long i = 1;
  for (;; ++i) {
    const HiFloat log_i = log(HiFloat(i));
    log_factorial += log_i;
    const HiFloat term = exp(x * log_i + i * log_mu - log_factorial);
    partial += term;
    if (i < min_terms) continue;
    const HiFloat ratio_i = exp(x * log1p(1 / HiFloat(i))) * mu / (i + 1);
    const HiFloat ratio_next = exp(x * log1p(1 / HiFloat(i + 1))) * mu / (i + 2);
    if (!(ratio_next < 1)) continue;
    tail = term * ratio_i / (1 - ratio_next);
    if (tail <= opts.rel_tol * partial) break;
  }
  const HiFloat scale = exp(-mu);
  return DobinskiResult{x, mu, partial * scale, i + 1, tail * scale};
}

DobinskiResult bell_dobinski(const HiFloat& x, const DobinskiOptions& opts) {
  return touchard_dobinski(x, HiFloat(1), opts);
}

HiFloat log_bell_power(const HiFloat& k, const HiFloat& mu, const DobinskiOptions& opts) {
  if (!(k > 0)) throw DomainError("order k must be positive, got " + k.to_string(17));
  if (!(mu > 0)) throw DomainError("mean must be positive, got " + mu.to_string(17));
  return mu * log(bell_dobinski(k / mu, opts).value);
}

HiFloat bell_power_lower(const HiFloat& k, long mu, const DobinskiOptions& opts) {
  if (mu < 1) throw DomainError("bell_power_lower needs an integer mean >= 1");
  return exp(log_bell_power(k, HiFloat(mu), opts));
}

}  // namespace subpoisson
