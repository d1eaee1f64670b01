#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "monorun/rng.hpp"
#include "monorun/scan.hpp"

namespace monorun::mc {

inline constexpr std::uint64_t kDefaultSeed = 20240521;

/// Uniform permutation of 1..n by Fisher-Yates over `rng`. Throws on n == 0.
PermutationSample generate_permutation(std::size_t n, CounterRng& rng);

/// Same draw as generate_permutation, written into a reusable buffer.
void shuffle_into(std::vector<Rank>& buffer, std::size_t n, CounterRng& rng);

/// Random stream for trial `trial` under `seed`.
inline CounterRng trial_stream(std::uint64_t seed, std::uint64_t trial) { return CounterRng(seed, trial); }

struct TrialConfig {
  std::size_t n = 0;
  std::vector<std::size_t> ks;  // each 2 <= k <= n-1
  std::uint64_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
};

void validate(const TrialConfig& config);

struct EmpiricalDistribution {
  Statistic statistic = Statistic::Longest;
  std::size_t n = 0;
  std::size_t k = 0;  // 0 when the statistic has no window
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::map<std::uint64_t, std::uint64_t> counts;

  std::uint64_t count(std::uint64_t value) const;
  double probability(std::uint64_t value) const;
  double mean() const;
  /// Smallest v with P(X <= v) >= 1/2.
  std::uint64_t median() const;
  /// Fraction of trials with predicate(value) true.
  template <class Pred>
  double fraction(Pred&& pred) const {
    std::uint64_t hit = 0;
    for (const auto& [v, c] : counts) {
      if (pred(v)) hit += c;
    }
    return static_cast<double>(hit) / static_cast<double>(trials);
  }
};

/// Combine results of disjoint trial ranges drawn under the same seed.
EmpiricalDistribution merge(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

struct WindowLaws {
  std::size_t k = 0;
  EmpiricalDistribution windows;  // M(n,k)
  EmpiricalDistribution strict;   // M'(n,k)
};

struct SimulationResult {
  EmpiricalDistribution longest;  // L
  std::vector<WindowLaws> per_k;  // parallel to config.ks

  std::vector<EmpiricalDistribution> distributions() const;
};

SimulationResult merge(const SimulationResult& a, const SimulationResult& b);

/// Trials [first, last) on the calling thread. Each trial checks the scan
/// consistency invariants and throws Error{InvariantViolation} on failure.
SimulationResult run_trial_range(const TrialConfig& config, std::uint64_t first, std::uint64_t last);

/// All trials, split into contiguous ranges over config.workers threads.
/// The result does not depend on the worker count.
SimulationResult run_trials(const TrialConfig& config);

struct TvEstimate {
  double tv = 0;
  double mc_stderr = 0;
};

/// Half-L1 distance between the empirical pmf and Po(lambda), with the
/// Poisson mass beyond the observed support folded in. mc_stderr is the
/// sum of per-cell multinomial standard deviations (halved), with each
/// cell's probability taken at the midpoint of the empirical and Poisson
/// values; it is a conservative scale for both the bias and the spread of
/// the estimate.
TvEstimate empirical_tv_to_poisson(const EmpiricalDistribution& emp, double lambda);

/// Empirical P(X <= value) with its binomial standard error.
struct ProportionEstimate {
  double p = 0;
  double std_error = 0;
};

ProportionEstimate cdf_estimate(const EmpiricalDistribution& emp, std::uint64_t value);

/// Longest head run in n Bernoulli(p) tosses, repeated `trials` times.
EmpiricalDistribution coin_trials(std::size_t n, double p, std::uint64_t trials, std::uint64_t seed,
                                  unsigned workers = 1);

}  // namespace monorun::mc
