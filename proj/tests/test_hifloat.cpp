#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <thread>

#include "subpoisson/errors.hpp"
#include "subpoisson/hifloat.hpp"

using namespace subpoisson;

TEST_CASE("working precision guard nests and restores") {
  CHECK(WorkingPrecision::current() == kDefaultBits);
  {
    WorkingPrecision outer(200);
    CHECK(HiFloat(1).precision() == 200);
    {
      WorkingPrecision inner(64);
      CHECK(HiFloat(1).precision() == 64);
    }
    CHECK(WorkingPrecision::current() == 200);
  }
  CHECK(WorkingPrecision::current() == kDefaultBits);
}

TEST_CASE("working precision is per thread") {
  WorkingPrecision guard(300);
  Bits seen = 0;
  std::thread t([&] { seen = WorkingPrecision::current(); });
  t.join();
  CHECK(seen == kDefaultBits);
}

TEST_CASE("out of range precision is rejected") {
  CHECK_THROWS_AS(WorkingPrecision(1), PrecisionError);
  CHECK_THROWS_AS(WorkingPrecision{kMinBits - 1}, PrecisionError);
  CHECK_NOTHROW(WorkingPrecision{kMinBits});
}

TEST_CASE("binary operations use the wider operand precision") {
  const HiFloat a = HiFloat(1).rounded_to(64);
  const HiFloat b = HiFloat(3).rounded_to(200);
  CHECK((a / b).precision() == 200);
}

TEST_CASE("exact literals carry no error, rounded results carry some") {
  CHECK(HiFloat(3).rel_error() == 0.0);
  CHECK(HiFloat::parse("0.5").rel_error() == 0.0);
  const HiFloat third = HiFloat(1) / HiFloat(3);
  CHECK(third.rel_error() > 0.0);
  CHECK(third.rel_error() <= 2.0 * unit_roundoff(kDefaultBits));
  const HiFloat sum = third + third + third;
  CHECK(sum.rel_error() > third.rel_error());
}

TEST_CASE("elementary functions agree with double precision") {
  for (double x : {1e-8, 0.3, 1.0, 2.5, 40.0}) {
    CHECK(exp(HiFloat(x)).to_double() == doctest::Approx(std::exp(x)).epsilon(1e-15));
    CHECK(log(HiFloat(x)).to_double() == doctest::Approx(std::log(x)).epsilon(1e-15));
    CHECK(log1p(HiFloat(x)).to_double() == doctest::Approx(std::log1p(x)).epsilon(1e-15));
    CHECK(expm1(HiFloat(x)).to_double() == doctest::Approx(std::expm1(x)).epsilon(1e-15));
    CHECK(sqrt(HiFloat(x)).to_double() == doctest::Approx(std::sqrt(x)).epsilon(1e-15));
  }
  CHECK(pow(HiFloat(2), HiFloat(10)) == HiFloat(1024));
}

TEST_CASE("exp and log are inverse to working precision") {
  WorkingPrecision guard(256);
  const HiFloat x = HiFloat::parse("0.123456789");
  CHECK(abs(log(exp(x)) - x) < HiFloat::parse("1e-70"));
}

TEST_CASE("parse and formatting") {
  CHECK(HiFloat::parse("1e-6").to_double() == 1e-6);
  CHECK(HiFloat::parse("inf") == HiFloat::infinity());
  CHECK_THROWS_AS(HiFloat::parse("1.2.3"), DomainError);
  CHECK_THROWS_AS(HiFloat::parse(""), DomainError);
  CHECK(HiFloat(1).to_string(5) == "1.0000e+00");
  CHECK(HiFloat::parse("1.5").to_display(6) == "1.50000");
  CHECK(HiFloat::euler().to_string(20) == "2.7182818284590452354e+00");
}

TEST_CASE("ordering and predicates") {
  CHECK(HiFloat(1) < HiFloat(2));
  CHECK(HiFloat(-1).sign() < 0);
  CHECK(HiFloat(0).is_zero());
  CHECK(HiFloat(4).is_integer());
  CHECK_FALSE(HiFloat::parse("4.5").is_integer());
  CHECK_FALSE(HiFloat::infinity().is_finite());
  const HiFloat nan = HiFloat(0) / HiFloat(0);
  CHECK(nan.is_nan());
  CHECK_FALSE(nan < HiFloat(0));
  CHECK_FALSE(nan >= HiFloat(0));
  CHECK(min(HiFloat(1), HiFloat(2)) == HiFloat(1));
  CHECK(max(HiFloat(1), HiFloat(2)) == HiFloat(2));
  CHECK(HiFloat::parse("2.5").to_long_ceil() == 3);
  CHECK(HiFloat::parse("2.5").to_long_floor() == 2);
}

TEST_CASE("rationals convert with a single rounding") {
  const HiFloat third(mpq_class(1, 3));
  CHECK(abs(third * 3 - 1) <= HiFloat::parse("1e-33"));
  CHECK(HiFloat(mpz_class("123456789012345678901234567890")).to_string(30) ==
        "1.23456789012345678901234567890e+29");
}
