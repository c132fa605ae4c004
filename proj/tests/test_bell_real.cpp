#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subpoisson/bell_real.hpp"
#include "subpoisson/errors.hpp"
#include "subpoisson/exact_moments.hpp"

using namespace subpoisson;

namespace {

HiFloat rel(const HiFloat& a, const HiFloat& b) { return abs(a - b) / abs(b); }

}  // namespace

TEST_CASE("integer orders reproduce Bell numbers") {
  for (unsigned k = 0; k <= 30; ++k) {
    CAPTURE(k);
    CHECK(rel(bell_dobinski(HiFloat(k)).value, HiFloat(bell_number(k))) < HiFloat::parse("1e-29"));
  }
}

TEST_CASE("integer orders reproduce Touchard polynomials") {
  const Rational mu(5, 2);
  for (unsigned k = 0; k <= 20; ++k)
    CHECK(rel(touchard_dobinski(HiFloat(k), HiFloat(mu)).value, HiFloat(poisson_raw_moment(mu, k))) <
          HiFloat::parse("1e-29"));
}

TEST_CASE("fractional orders (values frozen from an independent 50-digit summation)") {
  CHECK(rel(bell_dobinski(HiFloat::parse("0.5")).value, HiFloat::parse("0.773192656379285987")) <
        HiFloat::parse("1e-17"));
  CHECK(rel(bell_dobinski(HiFloat::parse("1.5")).value, HiFloat::parse("1.37273264035752205")) <
        HiFloat::parse("1e-17"));
  CHECK(rel(bell_dobinski(HiFloat::parse("0.1")).value, HiFloat::parse("0.655375384527604569")) <
        HiFloat::parse("1e-17"));
}

TEST_CASE("small orders approach 1 - 1/e, not 0, while B_0 = 1") {
  const HiFloat limit = 1 - 1 / HiFloat::euler();
  CHECK(abs(bell_dobinski(HiFloat::parse("1e-9")).value - limit) < HiFloat::parse("1e-8"));
  CHECK(abs(bell_dobinski(HiFloat(0)).value - 1) < HiFloat::parse("1e-30"));
}

TEST_CASE("B_x is nondecreasing for x >= 1 and dips below 1 on (0, 1)") {
  HiFloat previous = 0;
  for (int i = 0; i <= 200; ++i) {
    const HiFloat x = 1 + HiFloat(i) / 10;
    const HiFloat b = bell_dobinski(x).value;
    CHECK(b >= previous);
    previous = b;
  }
  CHECK(bell_dobinski(HiFloat::parse("0.5")).value < 1);
}

TEST_CASE("tail bound is certified and recorded") {
  const DobinskiResult r = bell_dobinski(HiFloat(10));
  CHECK(r.terms_used >= 12);
  CHECK(r.tail_bound >= 0);
  CHECK(r.tail_bound <= r.value * HiFloat::parse("1e-30"));
}

TEST_CASE("Bell power lower bound") {
  CHECK(rel(bell_power_lower(HiFloat(3), 1), HiFloat(5)) < HiFloat::parse("1e-30"));
  CHECK(rel(bell_power_lower(HiFloat(6), 2), HiFloat(25)) < HiFloat::parse("1e-30"));
  for (long mu = 1; mu <= 5; ++mu) CHECK(rel(bell_power_lower(HiFloat(mu), mu), HiFloat(1)) < HiFloat::parse("1e-30"));
  CHECK(rel(log_bell_power(HiFloat(6), HiFloat(2)), log(HiFloat(25))) < HiFloat::parse("1e-30"));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(bell_dobinski(HiFloat(-1)), DomainError);
  CHECK_THROWS_AS(touchard_dobinski(HiFloat(2), HiFloat(0)), DomainError);
  CHECK_THROWS_AS(bell_dobinski(HiFloat(20000)), DomainError);
  CHECK_THROWS_AS(bell_power_lower(HiFloat(3), 0), DomainError);
  DobinskiOptions tight;
  tight.rel_tol = HiFloat::parse("1e-60");
  CHECK_THROWS_AS(bell_dobinski(HiFloat(3), tight), PrecisionError);
}

TEST_CASE("the order cap can be raised explicitly") {
  WorkingPrecision guard(256);
  DobinskiOptions opts;
  opts.max_order = HiFloat(20000);
  opts.rel_tol = HiFloat::parse("1e-20");
  const DobinskiResult r = bell_dobinski(HiFloat(10001), opts);
  CHECK(r.value.is_finite());
  CHECK(r.value > HiFloat(1));
}
