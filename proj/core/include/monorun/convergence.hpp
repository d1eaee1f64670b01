#pragma once

// Finite-n diagnostics for the growth L_n ~ ln n / ln ln n of the longest
// monotone block, sampled along the exponential grid n = ceil(e^m).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monorun/montecarlo.hpp"
#include "monorun/theory.hpp"

namespace monorun::convergence {

/// ceil(e^m) for every integer m with n_min <= e^m <= n_max, increasing.
/// Requires 16 <= n_min <= n_max.
std::vector<std::uint64_t> exp_grid(std::uint64_t n_min, std::uint64_t n_max);

/// Trials per grid point: a fixed count, or budget / n clamped to
/// [min_trials, max_trials] so that larger n get fewer trials.
struct TrialSchedule {
  std::optional<std::uint64_t> fixed;
  std::uint64_t budget = 2'000'000'000;
  std::uint64_t min_trials = 1'000;
  std::uint64_t max_trials = 100'000;

  static TrialSchedule constant(std::uint64_t trials);

  std::uint64_t trials_for(std::uint64_t n) const;
  std::string describe() const;
};

struct TrajectoryOptions {
  TrialSchedule schedule;
  std::uint64_t seed = mc::kDefaultSeed;
  unsigned workers = 1;
  double x = 1.0;  // half-width of the window |L - t(n)| <= x
  theory::Schedule delta = theory::loglog_schedule();
  theory::Schedule theta = theory::loglog_schedule();
  theory::GammaMode gamma_mode = theory::GammaMode::Gamma;
  bool coin_baseline = true;
};

struct TrajectoryPoint {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;  // derived per-point seed
  double target = 0;       // ln n / ln ln n
  double mean_L = 0;
  std::uint64_t median_L = 0;
  double ratio = 0;  // mean_L / target
  double window_hit_rate = 0;
  std::optional<theory::WindowApprox> window;  // empty when t(n) - x <= 1
  std::uint64_t median_prediction = 0;
  mc::EmpiricalDistribution longest;
  // coin-toss baseline at the same n, p = 1/2
  std::optional<double> coin_mean;
  std::optional<double> coin_ratio;  // coin_mean / log2 n
};

/// Integer m minimizing |exp(-lambda_strict(n, m+1)) - 1/2|, the median of
/// L_n predicted by the Poisson approximation P(L_n <= m) = P(M(n,m+1) = 0).
std::uint64_t predicted_median(std::uint64_t n);

/// Grid points run in order; each uses montecarlo's parallel trials with a
/// seed derived from (options.seed, n).
std::vector<TrajectoryPoint> trajectory(const std::vector<std::uint64_t>& grid, const TrajectoryOptions& options);

}  // namespace monorun::convergence
