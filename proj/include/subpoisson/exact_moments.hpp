#pragma once

// Exact raw and factorial moments of Poisson, Binomial and Bernoulli-sum
// distributions in arbitrary-precision rational arithmetic.

#include <gmpxx.h>

#include <cstddef>
#include <deque>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

namespace subpoisson {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "3/10", "0.3", "1e-3" or "7" into an exact rational. Decimals are
/// read as integers over powers of ten.
Rational parse_rational(const std::string& text);

/// Triangle of Stirling numbers of the second kind S(k, i), 0 <= i <= k.
///
/// Rows are built with S(k, i) = i S(k-1, i) + S(k-1, i-1) and cached. Readers
/// may run concurrently; extension is serialized. Rows are never moved once
/// built, so references returned by row() stay valid for the table's lifetime.
class StirlingTable {
 public:
  static constexpr unsigned kDefaultMaxK = 64;

  explicit StirlingTable(unsigned max_k = kDefaultMaxK);

  /// Process-wide table used by the free functions below.
  static StirlingTable& shared();

  const std::vector<BigInt>& row(unsigned k);
  BigInt at(unsigned k, unsigned i);
  unsigned max_k() const;

 private:
  void extend_to(unsigned k);

  mutable std::shared_mutex mutex_;
  std::deque<std::vector<BigInt>> rows_;
};

/// S(k, i). Throws DomainError when i > k.
BigInt stirling2(unsigned k, unsigned i);

/// n (n-1) ... (n-k+1); the empty product for k = 0.
BigInt falling_factorial(const BigInt& n, unsigned k);

/// k-th Bell number, the k-th row sum of the Stirling triangle.
BigInt bell_number(unsigned k);

/// E X^k for X ~ Binomial(n, p) via sum_i S(k,i) n^(i falling) p^i.
Rational binomial_raw_moment(long n, const Rational& p, unsigned k);

/// Touchard polynomial B(k, mu) = sum_i S(k,i) mu^i, the Poisson raw moment.
Rational poisson_raw_moment(const Rational& mu, unsigned k);

/// E X^(k falling) = n^(k falling) p^k for X ~ Binomial(n, p).
Rational binomial_factorial_moment(long n, const Rational& p, unsigned k);

inline constexpr std::size_t kDefaultBernoulliCap = 20;

/// E (X_1 + ... + X_m)^k for independent Bernoulli(p_i), computed from the
/// exact distribution of the sum.
Rational bernoulli_sum_raw_moment(const std::vector<Rational>& probs, unsigned k,
                                  std::size_t cap = kDefaultBernoulliCap);

/// Probability mass function of a sum of independent Bernoulli(p_i).
std::vector<Rational> bernoulli_sum_pmf(const std::vector<Rational>& probs);

struct PoissonParams {
  Rational mean;
};

struct BinomialParams {
  long trials;
  Rational success;
};

struct BernoulliSumParams {
  std::vector<Rational> probs;
};

/// Nonnegative integer-valued distribution with an exactly known mean.
class Distribution {
 public:
  using Params = std::variant<PoissonParams, BinomialParams, BernoulliSumParams>;

  static Distribution poisson(Rational mean);
  static Distribution binomial(long trials, Rational success);
  static Distribution bernoulli_sum(std::vector<Rational> probs,
                                    std::size_t cap = kDefaultBernoulliCap);

  const Params& params() const noexcept { return params_; }
  Rational mean() const;
  Rational raw_moment(unsigned k) const;
  /// True when X is almost surely equal to its mean.
  bool is_deterministic() const;
  /// Short human-readable label such as "Binomial(10, 3/10)".
  std::string describe() const;

 private:
  explicit Distribution(Params p) : params_(std::move(p)) {}

  Params params_;
  std::size_t cap_ = kDefaultBernoulliCap;
};

}  // namespace subpoisson
