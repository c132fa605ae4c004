#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "subpoisson/errors.hpp"
#include "subpoisson/grid.hpp"
#include "subpoisson/parallel.hpp"
#include "subpoisson/sampling.hpp"

using namespace subpoisson;

TEST_CASE("grid endpoints are exact and spacing is as requested") {
  const auto pts = log_grid(1e-6, 1e6, 13).points();
  REQUIRE(pts.size() == 13);
  CHECK(pts.front() == 1e-6);
  CHECK(pts.back() == 1e6);
  CHECK(pts[6] == doctest::Approx(1.0));
  const auto lin = linear_grid(1.0, 10.0, 10).points();
  CHECK(lin[3] == doctest::Approx(4.0));
}

TEST_CASE("grid text round-trips") {
  for (const GridSpec& g : {log_grid(1e-6, 1e6, 10000), linear_grid(0.1, 1.0, 7), log_grid(0.3, 40.0, 50)}) {
    const GridSpec back = GridSpec::parse(g.describe());
    CHECK(back.min == g.min);
    CHECK(back.max == g.max);
    CHECK(back.count == g.count);
    CHECK(back.spacing == g.spacing);
  }
  CHECK(GridSpec::parse("1e-6:1e6:10000:log").count == 10000);
}

TEST_CASE("invalid grids") {
  for (const char* bad : {"1:2", "1:2:3:cubic", "2:1:5:lin", "0:1:5:log", "1:2:1:lin", "a:2:3:lin", "1:2:3:lin:x"})
    CHECK_THROWS_AS(GridSpec::parse(bad).validate(), DomainError);
}

TEST_CASE("parallel_map keeps index order and precision for any worker count") {
  WorkingPrecision guard(150);
  for (unsigned w : {1u, 2u, 3u, 8u}) {
    const auto out = parallel_map<std::pair<std::size_t, Bits>>(
        17, w, [](std::size_t i) { return std::make_pair(i, WorkingPrecision::current()); });
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i].first == i);
      CHECK(out[i].second == 150);
    }
  }
  CHECK_THROWS_AS(parallel_map<int>(5, 2, [](std::size_t i) -> int {
                    if (i == 3) throw DomainError("boom");
                    return 0;
                  }),
                  DomainError);
}

TEST_CASE("splitmix64 reference output") {
  // First output of the reference generator with state 0.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(derive_worker_seed(1, 0) != derive_worker_seed(1, 1));
}

TEST_CASE("log_factorial matches lgamma on both sides of the table") {
  for (std::int64_t k : {0, 1, 5, 100, 1023, 1024, 5000, 1000000})
    CHECK(log_factorial(k) == doctest::Approx(std::lgamma(static_cast<double>(k) + 1.0)).epsilon(1e-14));
}

TEST_CASE("uniform draws lie in [0, 1)") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

namespace {

// Sample mean and variance against the exact first two moments, 6 standard
// errors of slack.
void check_first_two_moments(const Distribution& dist, const std::string& method) {
  const Sampler sampler(dist);
  CHECK(sampler.method() == method);
  Rng rng(12345);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(sampler(rng));
    CHECK(x >= 0.0);
    s += x;
    s2 += x * x;
  }
  const double mean = dist.mean().get_d();
  const double var = dist.raw_moment(2).get_d() - mean * mean;
  const double sample_mean = s / n;
  const double sample_var = s2 / n - sample_mean * sample_mean;
  CAPTURE(method);
  CHECK(std::fabs(sample_mean - mean) < 6.0 * std::sqrt(var / n));
  CHECK(std::fabs(sample_var - var) < 0.05 * var);
}

}  // namespace

TEST_CASE("samplers reproduce the first two moments") {
  check_first_two_moments(Distribution::binomial(100, Rational(3, 10)), "bernoulli-sum");
  check_first_two_moments(Distribution::binomial(5000, Rational(1, 2)), "binomial-btrs");
  check_first_two_moments(Distribution::binomial(5000, Rational(999, 1000)), "binomial-inversion");
  check_first_two_moments(Distribution::binomial(2000, Rational(1, 1000)), "binomial-inversion");
  check_first_two_moments(Distribution::poisson(Rational(3)), "poisson-inversion");
  check_first_two_moments(Distribution::poisson(Rational(50)), "poisson-ptrs");
  check_first_two_moments(Distribution::bernoulli_sum({Rational(1, 3), Rational(2, 3), Rational(1, 10)}),
                          "bernoulli-sum");
}

TEST_CASE("deterministic sums and fixed seeds") {
  const Sampler ones(Distribution::bernoulli_sum({1, 1, 1}));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(ones(rng) == 3);
  const Sampler s(Distribution::poisson(Rational(40)));
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) CHECK(s(a) == s(b));
}
