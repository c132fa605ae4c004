#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subpoisson/errors.hpp"
#include "subpoisson/lambert_w.hpp"

using namespace subpoisson;

namespace {

// Bisection on w e^w = x, independent of the Halley solver.
HiFloat w_by_bisection(const HiFloat& x) {
  HiFloat lo = 0;
  HiFloat hi = max(HiFloat(1), log1p(x));
  for (int i = 0; i < 400; ++i) {
    const HiFloat mid = (lo + hi) / 2;
    if (mid * exp(mid) < x)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("exact points") {
  CHECK(lambert_w0(HiFloat(0)).w.is_zero());
  CHECK(abs(lambert_w0(HiFloat::euler()).w - 1) < HiFloat::parse("1e-32"));
  const HiFloat e2 = exp(HiFloat(2));
  CHECK(abs(lambert_w0(2 * e2).w - 2) < HiFloat::parse("1e-32"));
  CHECK(exp_w(HiFloat(0)) == HiFloat(1));
}

TEST_CASE("Halley solution agrees with bisection across the three starting regimes") {
  WorkingPrecision guard(200);
  for (const char* xs : {"1e-12", "0.001", "0.5", "1", "2", "2.7", "3", "100", "1e9", "1e15"}) {
    const HiFloat x = HiFloat::parse(xs);
    const WValue v = lambert_w0(x, HiFloat::parse("1e-50"));
    const HiFloat oracle = w_by_bisection(x);
    CAPTURE(xs);
    CHECK(abs(v.w - oracle) / oracle < HiFloat::parse("1e-48"));
    CHECK(v.iterations <= 100);
    CHECK(v.residual <= HiFloat::parse("1e-50"));
  }
}

TEST_CASE("residual is reported") {
  const WValue v = lambert_w0(HiFloat(10));
  CHECK(v.residual <= default_lambert_tolerance());
  CHECK(abs(v.w * exp(v.w) - 10) / 10 <= HiFloat::parse("1e-30"));
}

TEST_CASE("exp_w is x/W") {
  const HiFloat x(7);
  CHECK(abs(exp_w(x) - exp(lambert_w0(x).w)) / exp_w(x) < HiFloat::parse("1e-30"));
}

TEST_CASE("domain and precision errors") {
  CHECK_THROWS_AS(lambert_w0(HiFloat(-1)), DomainError);
  CHECK_THROWS_AS(lambert_w0(HiFloat(1), HiFloat::parse("1e-60")), PrecisionError);
  CHECK(lambert_tolerance_floor(113) > HiFloat(0));
  CHECK(lambert_tolerance_floor(256) < lambert_tolerance_floor(113));
}

TEST_CASE("Hoorfar-Hassani bound") {
  const HiFloat x(3);
  const HiFloat ew = exp_w(x);
  CHECK(hoorfar_hassani_upper(x, HiFloat(1)) == HiFloat(4));
  CHECK(hoorfar_hassani_upper(x, HiFloat(1) + x) >= ew);
  CHECK(abs(hoorfar_hassani_upper(x, ew) - ew) / ew < HiFloat::parse("1e-30"));
  CHECK_THROWS_AS(hoorfar_hassani_upper(x, HiFloat::parse("0.3")), DomainError);
}
