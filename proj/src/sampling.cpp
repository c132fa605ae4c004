#include "subpoisson/sampling.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "subpoisson/errors.hpp"

namespace subpoisson {
namespace {

constexpr std::int64_t kTableSize = 1024;

const std::array<double, kTableSize>& log_factorial_table() {
  static const std::array<double, kTableSize> table = [] {
    std::array<double, kTableSize> t{};
    t[0] = 0.0;
    for (std::int64_t i = 1; i < kTableSize; ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  return table;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_worker_seed(std::uint64_t seed, std::uint64_t worker) noexcept {
  return splitmix64(seed ^ splitmix64(worker + 1));
}

double log_factorial(std::int64_t k) {
  if (k < 0) return std::numeric_limits<double>::quiet_NaN();
  if (k < kTableSize) return log_factorial_table()[static_cast<std::size_t>(k)];
  // Stirling series; at k >= 1024 the omitted terms are below 1e-20.
  const double n = static_cast<double>(k) + 1.0;
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  return (n - 0.5) * std::log(n) - n + 0.5 * std::log(2.0 * std::numbers::pi) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

Sampler::Bernoulli Sampler::make_bernoulli(const Rational& p) {
  Bernoulli b;
  if (p >= 1) {
    b.always = true;
    return b;
  }
  BigInt scaled = p.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 64);
  scaled /= p.get_den();
  // p < 1, so scaled < 2^64 and fits the two 32-bit halves below.
  const BigInt hi = scaled >> 32;
  const BigInt lo = scaled - (hi << 32);
  b.threshold = (static_cast<std::uint64_t>(hi.get_ui()) << 32) | lo.get_ui();
  return b;
}

Sampler::Sampler(const Distribution& dist) {
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          mu_ = to_double(d.mean);
          kind_ = mu_ <= 30.0 ? Kind::PoissonInversion : Kind::PoissonPtrs;
        } else if constexpr (std::is_same_v<T, BinomialParams>) {
          n_ = d.trials;
          if (n_ <= 1000) {
            kind_ = Kind::BernoulliSum;
            bernoullis_.assign(static_cast<std::size_t>(n_), make_bernoulli(d.success));
          } else {
            const double p = to_double(d.success);
            flipped_ = p > 0.5;
            p_ = flipped_ ? 1.0 - p : p;
            kind_ = static_cast<double>(n_) * p_ >= 10.0 ? Kind::BinomialBtrs
                                                          : Kind::BinomialInversion;
          }
        } else {
          kind_ = Kind::BernoulliSum;
          for (const Rational& p : d.probs) bernoullis_.push_back(make_bernoulli(p));
        }
      },
      dist.params());
}

std::string Sampler::method() const {
  switch (kind_) {
    case Kind::BernoulliSum:
      return "bernoulli-sum";
    case Kind::BinomialBtrs:
      return "binomial-btrs";
    case Kind::BinomialInversion:
      return "binomial-inversion";
    case Kind::PoissonInversion:
      return "poisson-inversion";
    case Kind::PoissonPtrs:
      return "poisson-ptrs";
  }
  return "unknown";
}

std::int64_t Sampler::operator()(Rng& rng) const {
  switch (kind_) {
    case Kind::BernoulliSum: {
      std::int64_t x = 0;
      for (const Bernoulli& b : bernoullis_) x += (b.always || rng.bits() < b.threshold) ? 1 : 0;
      return x;
    }
    case Kind::BinomialBtrs: {
      const std::int64_t x = binomial_btrs(rng);
      return flipped_ ? n_ - x : x;
    }
    case Kind::BinomialInversion: {
      const std::int64_t x = binomial_inversion(rng);
      return flipped_ ? n_ - x : x;
    }
    case Kind::PoissonInversion:
      return poisson_inversion(rng);
    case Kind::PoissonPtrs:
      return poisson_ptrs(rng);
  }
  return 0;
}

std::int64_t Sampler::binomial_btrs(Rng& rng) const {
  const double n = static_cast<double>(n_);
  const double p = p_;
  const double q = 1.0 - p;
  const double spq = std::sqrt(n * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = n * p + 0.5;
  const double vr = 0.92 - 4.2 / b;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double lpq = std::log(p / q);
  const auto m = static_cast<std::int64_t>(std::floor((n + 1.0) * p));
  const double h = log_factorial(m) + log_factorial(n_ - m);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + c));
    if (k < 0 || k > n_) continue;
    if (us >= 0.07 && v <= vr) return k;
    v = std::log(v * alpha / (a / (us * us) + b));
    if (v <= h - log_factorial(k) - log_factorial(n_ - k) + static_cast<double>(k - m) * lpq)
      return k;
  }
}

std::int64_t Sampler::binomial_inversion(Rng& rng) const {
  const double q = 1.0 - p_;
  const double ratio = p_ / q;
  double prob = std::exp(static_cast<double>(n_) * std::log1p(-p_));
  double cdf = prob;
  const double u = rng.uniform();
  std::int64_t k = 0;
  while (u > cdf && k < n_) {
    prob *= ratio * static_cast<double>(n_ - k) / static_cast<double>(k + 1);
    ++k;
    cdf += prob;
  }
  return k;
}

std::int64_t Sampler::poisson_inversion(Rng& rng) const {
  double prob = std::exp(-mu_);
  double cdf = prob;
  const double u = rng.uniform();
  std::int64_t k = 0;
  // The cdf reaches 1 - 1e-16 long before k = 1000 for mu <= 30.
  while (u > cdf && k < 1000) {
    ++k;
    prob *= mu_ / static_cast<double>(k);
    cdf += prob;
  }
  return k;
}

std::int64_t Sampler::poisson_ptrs(Rng& rng) const {
  const double smu = std::sqrt(mu_);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mu = std::log(mu_);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + mu_ + 0.43));
    if (us >= 0.07 && v <= vr) return k;
    if (k < 0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mu_ + static_cast<double>(k) * log_mu - log_factorial(k))
      return k;
  }
}

}  // namespace subpoisson
