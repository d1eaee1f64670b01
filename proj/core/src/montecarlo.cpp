#include "monorun/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>
#include <thread>

#include "monorun/error.hpp"

namespace monorun::mc {

namespace {

class Histogram {
 public:
  void add(std::uint64_t v) {
    if (v >= bins_.size()) bins_.resize(v + 1, 0);
    ++bins_[v];
  }

  std::map<std::uint64_t, std::uint64_t> to_map() const {
    std::map<std::uint64_t, std::uint64_t> m;
    for (std::size_t v = 0; v < bins_.size(); ++v) {
      if (bins_[v] != 0) m.emplace(v, bins_[v]);
    }
    return m;
  }

 private:
  std::vector<std::uint64_t> bins_;
};

EmpiricalDistribution make_distribution(Statistic s, std::size_t n, std::size_t k, std::uint64_t trials,
                                        std::uint64_t seed, const Histogram& h) {
  EmpiricalDistribution d;
  d.statistic = s;
  d.n = n;
  d.k = k;
  d.trials = trials;
  d.seed = seed;
  d.counts = h.to_map();
  return d;
}

[[noreturn]] void invariant_failure(std::uint64_t trial, std::size_t k, const char* what) {
  fail(ErrorKind::InvariantViolation,
       std::string(what) + " violated at trial " + std::to_string(trial) + ", k = " + std::to_string(k));
}

// Splits [0, trials) into `workers` contiguous ranges, runs `run(first, last)`
// for each on its own thread, and folds the results left to right.
template <class Result, class Run>
Result run_partitioned(std::uint64_t trials, unsigned workers, Run&& run) {
  const std::uint64_t w = std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(trials, 1));
  if (w == 1) return run(0, trials);

  std::vector<Result> partial(w);
  std::vector<std::exception_ptr> errors(w);
  {
    std::vector<std::jthread> threads;
    const std::uint64_t base = trials / w;
    const std::uint64_t extra = trials % w;
    std::uint64_t first = 0;
    for (std::uint64_t i = 0; i < w; ++i) {
      const std::uint64_t last = first + base + (i < extra ? 1 : 0);
      threads.emplace_back([&, i, first, last] {
        try {
          partial[i] = run(first, last);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
      first = last;
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Result merged = std::move(partial[0]);
  for (std::uint64_t i = 1; i < w; ++i) merged = merge(merged, partial[i]);
  return merged;
}

}  // namespace

void shuffle_into(std::vector<Rank>& buffer, std::size_t n, CounterRng& rng) {
  if (n == 0) fail(ErrorKind::Domain, "n must be at least 1");
  buffer.resize(n);
  std::iota(buffer.begin(), buffer.end(), Rank{1});
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::uint32_t j = rng.bounded(static_cast<std::uint32_t>(i + 1));
    std::swap(buffer[i], buffer[j]);
  }
}

PermutationSample generate_permutation(std::size_t n, CounterRng& rng) {
  std::vector<Rank> buffer;
  shuffle_into(buffer, n, rng);
  return PermutationSample(std::move(buffer));
}

void validate(const TrialConfig& config) {
  if (config.n == 0) fail(ErrorKind::Domain, "n must be at least 1");
  if (config.n > 0xFFFFFFFFULL) fail(ErrorKind::Domain, "n exceeds the 32-bit rank range");
  if (config.trials == 0) fail(ErrorKind::Domain, "trials must be at least 1");
  if (config.workers == 0) fail(ErrorKind::Domain, "workers must be at least 1");
  for (const std::size_t k : config.ks) {
    if (k < 2 || k + 1 > config.n) {
      fail(ErrorKind::Domain, "k = " + std::to_string(k) + " outside 2 <= k <= n-1 for n = " + std::to_string(config.n));
    }
  }
}

std::uint64_t EmpiricalDistribution::count(std::uint64_t value) const {
  const auto it = counts.find(value);
  return it == counts.end() ? 0 : it->second;
}

double EmpiricalDistribution::probability(std::uint64_t value) const {
  return static_cast<double>(count(value)) / static_cast<double>(trials);
}

double EmpiricalDistribution::mean() const {
  long double sum = 0;
  for (const auto& [v, c] : counts) sum += static_cast<long double>(v) * static_cast<long double>(c);
  return static_cast<double>(sum / static_cast<long double>(trials));
}

std::uint64_t EmpiricalDistribution::median() const {
  std::uint64_t cumulative = 0;
  for (const auto& [v, c] : counts) {
    cumulative += c;
    if (2 * cumulative >= trials) return v;
  }
  return counts.empty() ? 0 : counts.rbegin()->first;
}

EmpiricalDistribution merge(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  if (a.statistic != b.statistic || a.n != b.n || a.k != b.k || a.seed != b.seed) {
    fail(ErrorKind::Domain, "cannot merge distributions of different statistics, sizes or seeds");
  }
  EmpiricalDistribution out = a;
  out.trials += b.trials;
  for (const auto& [v, c] : b.counts) out.counts[v] += c;
  return out;
}

std::vector<EmpiricalDistribution> SimulationResult::distributions() const {
  std::vector<EmpiricalDistribution> all{longest};
  for (const auto& w : per_k) {
    all.push_back(w.windows);
    all.push_back(w.strict);
  }
  return all;
}

SimulationResult merge(const SimulationResult& a, const SimulationResult& b) {
  if (a.per_k.size() != b.per_k.size()) fail(ErrorKind::Domain, "cannot merge results with different window sets");
  SimulationResult out;
  out.longest = merge(a.longest, b.longest);
  out.per_k.reserve(a.per_k.size());
  for (std::size_t i = 0; i < a.per_k.size(); ++i) {
    out.per_k.push_back(
        WindowLaws{a.per_k[i].k, merge(a.per_k[i].windows, b.per_k[i].windows), merge(a.per_k[i].strict, b.per_k[i].strict)});
  }
  return out;
}

SimulationResult run_trial_range(const TrialConfig& config, std::uint64_t first, std::uint64_t last) {
  validate(config);
  const std::size_t m = config.ks.size();
  Histogram longest;
  std::vector<Histogram> windows(m);
  std::vector<Histogram> strict(m);
  std::vector<Rank> buffer;
  MultiCounts counts;

  for (std::uint64_t t = first; t < last; ++t) {
    CounterRng rng = trial_stream(config.seed, t);
    shuffle_into(buffer, config.n, rng);
    scan_counts(buffer, config.ks, counts);
    longest.add(counts.longest);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t k = config.ks[i];
      if ((counts.longest < k) != (counts.windows[i] == 0)) invariant_failure(t, k, "duality L < k <=> M = 0");
      if (counts.windows[i] < counts.strict[i]) invariant_failure(t, k, "dominance M >= M'");
      windows[i].add(counts.windows[i]);
      strict[i].add(counts.strict[i]);
    }
  }

  const std::uint64_t trials = last - first;
  SimulationResult result;
  result.longest = make_distribution(Statistic::Longest, config.n, 0, trials, config.seed, longest);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = config.ks[i];
    result.per_k.push_back(WindowLaws{k, make_distribution(Statistic::Windows, config.n, k, trials, config.seed, windows[i]),
                                      make_distribution(Statistic::StrictBlocks, config.n, k, trials, config.seed, strict[i])});
  }
  return result;
}

SimulationResult run_trials(const TrialConfig& config) {
  validate(config);
  return run_partitioned<SimulationResult>(config.trials, config.workers, [&](std::uint64_t first, std::uint64_t last) {
    return run_trial_range(config, first, last);
  });
}

TvEstimate empirical_tv_to_poisson(const EmpiricalDistribution& emp, double lambda) {
  if (emp.trials == 0) fail(ErrorKind::Domain, "empirical distribution has zero trials");
  if (!(lambda > 0.0)) fail(ErrorKind::Domain, "Poisson mean must be positive");
  const double trials = static_cast<double>(emp.trials);
  const std::uint64_t top = emp.counts.empty() ? 0 : emp.counts.rbegin()->first;

  double q = std::exp(-lambda);
  double l1 = 0.0;
  double spread = 0.0;
  auto cell = [&](double p_hat, double q_v) {
    l1 += std::abs(p_hat - q_v);
    const double mid = 0.5 * (p_hat + q_v);
    spread += std::sqrt(mid * (1.0 - mid) / trials);
  };
  for (std::uint64_t v = 0; v <= top; ++v) {
    if (v > 0) q *= lambda / static_cast<double>(v);
    cell(emp.probability(v), q);
  }
  for (std::uint64_t v = top + 1;; ++v) {
    q *= lambda / static_cast<double>(v);
    cell(0.0, q);
    if (q < 1e-300 || (static_cast<double>(v) > lambda && q < 1e-17)) break;
  }
  return TvEstimate{0.5 * l1, 0.5 * spread};
}

ProportionEstimate cdf_estimate(const EmpiricalDistribution& emp, std::uint64_t value) {
  if (emp.trials == 0) fail(ErrorKind::Domain, "empirical distribution has zero trials");
  const double p = emp.fraction([value](std::uint64_t v) { return v <= value; });
  return ProportionEstimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(emp.trials))};
}

EmpiricalDistribution coin_trials(std::size_t n, double p, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::Domain, "p must lie in (0, 1)");
  if (n == 0) fail(ErrorKind::Domain, "n must be at least 1");
  if (trials == 0) fail(ErrorKind::Domain, "trials must be at least 1");
  if (workers == 0) fail(ErrorKind::Domain, "workers must be at least 1");
  return run_partitioned<EmpiricalDistribution>(trials, workers, [&](std::uint64_t first, std::uint64_t last) {
    Histogram h;
    for (std::uint64_t t = first; t < last; ++t) {
      CounterRng rng = trial_stream(seed, t);
      std::uint64_t best = 0;
      std::uint64_t run = 0;
      for (std::size_t i = 0; i < n; ++i) {
        run = rng.next_unit() < p ? run + 1 : 0;
        if (run > best) best = run;
      }
      h.add(best);
    }
    return make_distribution(Statistic::LongestHeadRun, n, 0, last - first, seed, h);
  });
}

}  // namespace monorun::mc
