#pragma once

// Reproducible samplers for the Monte Carlo cross-check.
//
// Generator: std::mt19937_64 (period 2^19937 - 1). Worker w of a run seeded
// with s uses seed splitmix64(s ^ splitmix64(w + 1)).
//
// Methods:
//  - Bernoulli: compare a raw 64-bit draw with floor(p 2^64) (exact for p = 1).
//  - Binomial n <= 1000: sum of n Bernoulli draws.
//  - Binomial n > 1000: BTRS transformed rejection (Hormann 1993) when
//    min(np, nq) >= 10, otherwise sequential inversion on the smaller side.
//  - Poisson mu <= 30: sequential inversion.
//  - Poisson mu > 30: PTRS transformed rejection (Hormann 1993).

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "subpoisson/exact_moments.hpp"

namespace subpoisson {

inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_worker_seed(std::uint64_t seed, std::uint64_t worker) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// log(k!) without touching global state.
double log_factorial(std::int64_t k);

/// Draws from a Distribution with the methods listed above.
class Sampler {
 public:
  explicit Sampler(const Distribution& dist);

  std::int64_t operator()(Rng& rng) const;
  /// Method label recorded in Monte Carlo reports.
  std::string method() const;

 private:
  struct Bernoulli {
    std::uint64_t threshold = 0;
    bool always = false;
  };
  enum class Kind { BernoulliSum, BinomialBtrs, BinomialInversion, PoissonInversion, PoissonPtrs };

  static Bernoulli make_bernoulli(const Rational& p);
  std::int64_t binomial_btrs(Rng& rng) const;
  std::int64_t binomial_inversion(Rng& rng) const;
  std::int64_t poisson_inversion(Rng& rng) const;
  std::int64_t poisson_ptrs(Rng& rng) const;

  Kind kind_;
  std::vector<Bernoulli> bernoullis_;
  std::int64_t n_ = 0;
  double p_ = 0.0;        // success probability on the sampled side
  bool flipped_ = false;  // sampled n - X with 1 - p
  double mu_ = 0.0;
};

}  // namespace subpoisson
