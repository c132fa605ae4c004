#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <thread>

#include "subpoisson/errors.hpp"
#include "subpoisson/exact_moments.hpp"

using namespace subpoisson;

namespace {

// Number of set partitions of {0..k-1} into exactly i blocks, by enumerating
// restricted growth strings.
long count_partitions(int k, int i) {
  long count = 0;
  std::vector<int> a(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int blocks) {
    if (pos == k) {
      if (blocks == i) ++count;
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      a[pos] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  if (k == 0) return i == 0 ? 1 : 0;
  rec(0, 0);
  return count;
}

Rational rpow(const Rational& b, long e) {
  Rational r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

// E X^k by enumerating all 2^m outcomes.
Rational bernoulli_moment_by_enumeration(const std::vector<Rational>& p, unsigned k) {
  Rational sum = 0;
  const std::size_t m = p.size();
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    Rational prob = 1;
    long ones = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (1UL << j)) {
        prob *= p[j];
        ++ones;
      } else {
        prob *= 1 - p[j];
      }
    }
    sum += prob * rpow(Rational(ones), k);
  }
  return sum;
}

}  // namespace

TEST_CASE("Stirling numbers count set partitions") {
  for (int k = 0; k <= 9; ++k)
    for (int i = 0; i <= k; ++i) CHECK(stirling2(k, i) == count_partitions(k, i));
  CHECK_THROWS_AS(stirling2(3, 4), DomainError);
}

TEST_CASE("Stirling table grows past its initial size and serves concurrent readers") {
  StirlingTable table(4);
  const auto& row = table.row(3);
  CHECK(table.row(40).size() == 41);
  CHECK(row.size() == 4);  // earlier rows stay valid
  CHECK(table.at(40, 1) == 1);
  CHECK(table.at(40, 40) == 1);
  std::vector<std::thread> threads;
  std::vector<BigInt> sums(4);
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      for (const BigInt& v : table.row(60 + t)) sums[t] += v;
    });
  for (auto& th : threads) th.join();
  for (int t = 0; t < 4; ++t) CHECK(sums[t] == bell_number(60 + t));
}

TEST_CASE("Bell numbers are row sums and match Poisson(1) moments") {
  CHECK(bell_number(0) == 1);
  for (unsigned k = 1; k <= 12; ++k) {
    BigInt s = 0;
    for (unsigned i = 0; i <= k; ++i) s += count_partitions(static_cast<int>(k), static_cast<int>(i));
    CHECK(bell_number(k) == s);
  }
  CHECK(poisson_raw_moment(1, 4) == 15);
}

TEST_CASE("falling factorial") {
  CHECK(falling_factorial(10, 0) == 1);
  CHECK(falling_factorial(10, 3) == 720);
  CHECK(falling_factorial(3, 5) == 0);
}

TEST_CASE("binomial moments equal pmf sums") {
  for (long n : {1L, 2L, 7L})
    for (const char* ps : {"1/3", "1/2", "1"})
      for (unsigned k = 0; k <= 6; ++k) {
        const Rational p = parse_rational(ps);
        Rational direct = 0;
        for (long j = 0; j <= n; ++j) {
          BigInt c;
          mpz_bin_uiui(c.get_mpz_t(), n, j);
          direct += Rational(c) * rpow(p, j) * rpow(1 - p, n - j) * rpow(Rational(j), k);
        }
        CHECK(binomial_raw_moment(n, p, k) == direct);
      }
  CHECK(binomial_raw_moment(2, parse_rational("0.5"), 2) == Rational(3, 2));
  CHECK(binomial_factorial_moment(10, Rational(1, 2), 3) == 90);
  CHECK_THROWS_AS(binomial_raw_moment(0, Rational(1, 2), 1), DomainError);
  CHECK_THROWS_AS(binomial_raw_moment(3, Rational(0), 1), DomainError);
  CHECK_THROWS_AS(binomial_raw_moment(3, Rational(3, 2), 1), DomainError);
}

TEST_CASE("Poisson moments are Touchard polynomials") {
  const Rational mu(5, 2);
  CHECK(poisson_raw_moment(mu, 0) == 1);
  CHECK(poisson_raw_moment(mu, 1) == mu);
  CHECK(poisson_raw_moment(mu, 2) == mu * mu + mu);
  CHECK(poisson_raw_moment(mu, 3) == mu * mu * mu + 3 * mu * mu + mu);
  CHECK_THROWS_AS(poisson_raw_moment(0, 2), DomainError);
}

TEST_CASE("Bernoulli sums match outcome enumeration") {
  const std::vector<Rational> p = {Rational(1, 3), Rational(2, 3), Rational(1, 10), Rational(1)};
  for (unsigned k = 0; k <= 6; ++k) CHECK(bernoulli_sum_raw_moment(p, k) == bernoulli_moment_by_enumeration(p, k));
  const auto pmf = bernoulli_sum_pmf({Rational(1, 2), Rational(1, 2)});
  REQUIRE(pmf.size() == 3);
  CHECK(pmf[1] == Rational(1, 2));
  CHECK_THROWS_AS(bernoulli_sum_raw_moment({}, 1), DomainError);
  CHECK_THROWS_AS(bernoulli_sum_raw_moment(std::vector<Rational>(21, Rational(1, 2)), 1), SizeError);
  CHECK_NOTHROW(bernoulli_sum_raw_moment(std::vector<Rational>(21, Rational(1, 2)), 1, 30));
}

TEST_CASE("equal Bernoulli sums reproduce the binomial") {
  const std::vector<Rational> p(6, Rational(3, 10));
  for (unsigned k = 0; k <= 8; ++k) CHECK(bernoulli_sum_raw_moment(p, k) == binomial_raw_moment(6, Rational(3, 10), k));
}

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("0.3") == Rational(3, 10));
  CHECK(parse_rational("3/10") == Rational(3, 10));
  CHECK(parse_rational("6/20") == Rational(3, 10));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("2.5E2") == 250);
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  for (const char* bad : {"", "abc", "1/0", "1/", "0.3.1", "1e", "--1"}) CHECK_THROWS_AS(parse_rational(bad), DomainError);
}

TEST_CASE("Distribution front end") {
  const auto pois = Distribution::poisson(Rational(2));
  CHECK(pois.mean() == 2);
  CHECK(pois.raw_moment(2) == 6);
  const auto bin = Distribution::binomial(10, Rational(3, 10));
  CHECK(bin.mean() == 3);
  CHECK(bin.describe() == "Binomial(10, 3/10)");
  CHECK_FALSE(bin.is_deterministic());
  const auto ones = Distribution::bernoulli_sum({1, 1, 1});
  CHECK(ones.is_deterministic());
  CHECK(ones.raw_moment(3) == 27);
  CHECK_THROWS_AS(Distribution::poisson(Rational(-1)), DomainError);
  CHECK_THROWS_AS(Distribution::binomial(5, Rational(2)), DomainError);
}
