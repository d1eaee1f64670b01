#include "monorun/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "monorun/error.hpp"

namespace monorun::convergence {

std::vector<std::uint64_t> exp_grid(std::uint64_t n_min, std::uint64_t n_max) {
  if (n_min < 16) fail(ErrorKind::Domain, "grid requires n_min >= 16");
  if (n_min > n_max) fail(ErrorKind::Domain, "empty range: n_min > n_max");
  std::vector<std::uint64_t> grid;
  const auto lo = static_cast<double>(n_min);
  const auto hi = static_cast<double>(n_max);
  for (int m = static_cast<int>(std::floor(std::log(lo))); m <= static_cast<int>(std::ceil(std::log(hi))); ++m) {
    const double u = std::exp(static_cast<double>(m));
    if (u < lo || u > hi) continue;
    const auto point = static_cast<std::uint64_t>(std::ceil(u));
    if (grid.empty() || grid.back() != point) grid.push_back(point);
  }
  return grid;
}

TrialSchedule TrialSchedule::constant(std::uint64_t trials) {
  TrialSchedule s;
  s.fixed = trials;
  return s;
}

std::uint64_t TrialSchedule::trials_for(std::uint64_t n) const {
  if (fixed) return *fixed;
  return std::clamp<std::uint64_t>(budget / std::max<std::uint64_t>(n, 1), min_trials, max_trials);
}

std::string TrialSchedule::describe() const {
  std::ostringstream os;
  if (fixed) {
    os << "fixed " << *fixed;
  } else {
    os << "clamp(" << budget << " / n, " << min_trials << ", " << max_trials << ")";
  }
  return os.str();
}

std::uint64_t predicted_median(std::uint64_t n) {
  if (n < 3) fail(ErrorKind::Domain, "median prediction requires n >= 3");
  std::uint64_t best = 1;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 1; m + 2 <= n; ++m) {
    const double gap = std::abs(std::exp(-theory::lambda_strict(n, m + 1)) - 0.5);
    if (gap < best_gap) {
      best_gap = gap;
      best = m;
    }
    // exp(-lambda) increases towards 1 in m; once past 1/2 the gap only grows
    if (std::exp(-theory::lambda_strict(n, m + 1)) > 0.5) break;
  }
  return best;
}

std::vector<TrajectoryPoint> trajectory(const std::vector<std::uint64_t>& grid, const TrajectoryOptions& options) {
  for (const auto n : grid) {
    if (n < 16) fail(ErrorKind::Domain, "trajectory grid points must be >= 16");
  }
  if (options.x < 0) fail(ErrorKind::Domain, "window half-width x must be non-negative");

  std::vector<TrajectoryPoint> points;
  points.reserve(grid.size());
  for (const auto n : grid) {
    TrajectoryPoint pt;
    pt.n = n;
    pt.trials = options.schedule.trials_for(n);
    pt.seed = mix_seed(options.seed, n);
    pt.target = theory::target_length(static_cast<double>(n));

    mc::TrialConfig config;
    config.n = n;
    config.trials = pt.trials;
    config.seed = pt.seed;
    config.workers = options.workers;
    pt.longest = mc::run_trials(config).longest;

    pt.mean_L = pt.longest.mean();
    pt.median_L = pt.longest.median();
    pt.ratio = pt.mean_L / pt.target;
    const double t = pt.target;
    const double x = options.x;
    pt.window_hit_rate =
        pt.longest.fraction([t, x](std::uint64_t v) { return std::abs(static_cast<double>(v) - t) <= x; });
    if (t - x > 1.0) {
      pt.window = theory::window_probability(static_cast<double>(n), x, options.delta, options.theta, options.gamma_mode);
    }
    pt.median_prediction = predicted_median(n);

    if (options.coin_baseline) {
      const auto coin = mc::coin_trials(n, 0.5, pt.trials, mix_seed(pt.seed, 1), options.workers);
      pt.coin_mean = coin.mean();
      pt.coin_ratio = *pt.coin_mean / theory::coin_target(static_cast<double>(n), 0.5);
    }
    points.push_back(std::move(pt));
  }
  return points;
}

}  // namespace monorun::convergence
