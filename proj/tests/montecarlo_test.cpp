#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "monorun/error.hpp"
#include "monorun/exact.hpp"
#include "monorun/montecarlo.hpp"
#include "monorun/theory.hpp"

namespace {

using namespace monorun;

// chi-square upper quantiles at p = 1e-6 (scipy.stats.chi2.isf)
constexpr double kChi2Df5 = 35.888;
constexpr double kChi2Df23 = 70.550;

TEST(GeneratePermutation, Boundaries) {
  CounterRng rng(1, 1);
  const auto one = mc::generate_permutation(1, rng);
  EXPECT_EQ(std::vector<Rank>(one.ranks().begin(), one.ranks().end()), std::vector<Rank>{1});
  EXPECT_THROW(mc::generate_permutation(0, rng), Error);
}

TEST(GeneratePermutation, DeterministicPerTrial) {
  for (std::uint64_t t : {0ull, 1ull, 999ull, 1ull << 40}) {
    auto a = mc::trial_stream(123, t);
    auto b = mc::trial_stream(123, t);
    const auto pa = mc::generate_permutation(50, a);
    const auto pb = mc::generate_permutation(50, b);
    EXPECT_TRUE(std::ranges::equal(pa.ranks(), pb.ranks()));
  }
}

TEST(GeneratePermutation, FirstElementUniform) {
  const std::uint64_t trials = 1'000'000;
  std::vector<double> counts(7, 0);
  std::vector<Rank> buf;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = mc::trial_stream(2024, t);
    mc::shuffle_into(buf, 6, rng);
    counts[buf[0]] += 1;
  }
  double chi2 = 0;
  const double expected = trials / 6.0;
  for (int v = 1; v <= 6; ++v) chi2 += (counts[v] - expected) * (counts[v] - expected) / expected;
  EXPECT_LT(chi2, kChi2Df5);
}

TEST(GeneratePermutation, AllOrdersOfFourUniform) {
  const std::uint64_t trials = 240'000;
  std::map<std::vector<Rank>, double> counts;
  std::vector<Rank> buf;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = mc::trial_stream(99, t);
    mc::shuffle_into(buf, 4, rng);
    counts[buf] += 1;
  }
  ASSERT_EQ(counts.size(), 24u);
  double chi2 = 0;
  for (const auto& [p, c] : counts) chi2 += (c - 10'000.0) * (c - 10'000.0) / 10'000.0;
  EXPECT_LT(chi2, kChi2Df23);
}

TEST(RunTrials, TwoElementsAlwaysHaveLongestTwo) {
  mc::TrialConfig cfg{.n = 2, .ks = {}, .trials = 500, .seed = 3, .workers = 2};
  const auto r = mc::run_trials(cfg);
  EXPECT_EQ(r.longest.trials, 500u);
  EXPECT_EQ(r.longest.probability(2), 1.0);
}

TEST(RunTrials, ValidatesConfig) {
  EXPECT_THROW(mc::run_trials({.n = 0, .ks = {}, .trials = 1}), Error);
  EXPECT_THROW(mc::run_trials({.n = 5, .ks = {}, .trials = 0}), Error);
  EXPECT_THROW(mc::run_trials({.n = 5, .ks = {5}, .trials = 1}), Error);
  EXPECT_THROW(mc::run_trials({.n = 5, .ks = {1}, .trials = 1}), Error);
  EXPECT_THROW(mc::run_trials({.n = 5, .ks = {}, .trials = 1, .seed = 1, .workers = 0}), Error);
}

TEST(RunTrials, IndependentOfWorkerCount) {
  mc::TrialConfig cfg{.n = 40, .ks = {3, 4, 5}, .trials = 20'000, .seed = 77, .workers = 1};
  const auto one = mc::run_trials(cfg);
  for (unsigned w : {2u, 3u, 7u}) {
    cfg.workers = w;
    const auto many = mc::run_trials(cfg);
    const auto a = one.distributions();
    const auto b = many.distributions();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].counts, b[i].counts);
      EXPECT_EQ(a[i].trials, b[i].trials);
    }
  }
}

TEST(RunTrials, ShardMergeEqualsFullRun) {
  const mc::TrialConfig cfg{.n = 25, .ks = {3, 6}, .trials = 9'000, .seed = 5, .workers = 1};
  const auto full = mc::run_trial_range(cfg, 0, 9'000);
  const auto a = mc::run_trial_range(cfg, 0, 1'234);
  const auto b = mc::run_trial_range(cfg, 1'234, 6'000);
  const auto c = mc::run_trial_range(cfg, 6'000, 9'000);
  const auto left = mc::merge(mc::merge(a, b), c);
  const auto right = mc::merge(a, mc::merge(b, c));
  const auto swapped = mc::merge(c, mc::merge(a, b));
  for (const auto* r : {&left, &right, &swapped}) {
    EXPECT_EQ(r->longest.counts, full.longest.counts);
    for (std::size_t i = 0; i < full.per_k.size(); ++i) {
      EXPECT_EQ(r->per_k[i].windows.counts, full.per_k[i].windows.counts);
      EXPECT_EQ(r->per_k[i].strict.counts, full.per_k[i].strict.counts);
    }
  }
}

TEST(RunTrials, MergeRejectsMismatch) {
  const auto a = mc::run_trial_range({.n = 10, .ks = {}, .trials = 10, .seed = 1}, 0, 10);
  const auto b = mc::run_trial_range({.n = 10, .ks = {}, .trials = 10, .seed = 2}, 0, 10);
  EXPECT_THROW(mc::merge(a.longest, b.longest), Error);
}

double tv_between(const mc::EmpiricalDistribution& emp, const exact::ExactPMF& pmf) {
  std::uint64_t top = std::max(emp.counts.rbegin()->first, pmf.weights.rbegin()->first);
  double l1 = 0;
  for (std::uint64_t v = 0; v <= top; ++v) {
    l1 += std::abs(emp.probability(v) - exact::to_double(pmf.probability(v)));
  }
  return 0.5 * l1;
}

TEST(RunTrials, LongestLawMatchesExactOracleAtSeven) {
  const auto r = mc::run_trials({.n = 7, .ks = {3, 4}, .trials = 1'000'000, .seed = 11, .workers = 2});
  const auto tables = exact::enumerate_all(7);
  EXPECT_LT(tv_between(r.longest, tables.law(Statistic::Longest)), 0.005);
  EXPECT_LT(tv_between(r.per_k[0].strict, tables.law(Statistic::StrictBlocks, 3)), 0.005);
  EXPECT_LT(tv_between(r.per_k[1].windows, tables.law(Statistic::Windows, 4)), 0.005);
}

mc::EmpiricalDistribution poisson_sample(double lambda, std::uint64_t trials, std::uint64_t seed) {
  mc::EmpiricalDistribution d;
  d.statistic = Statistic::StrictBlocks;
  d.trials = trials;
  d.seed = seed;
  for (std::uint64_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    double u = rng.next_unit();
    std::uint64_t v = 0;
    double p = std::exp(-lambda);
    double cdf = p;
    while (u >= cdf && p > 0) {
      ++v;
      p *= lambda / static_cast<double>(v);
      cdf += p;
    }
    ++d.counts[v];
  }
  return d;
}

TEST(EmpiricalTv, VanishesForPoissonSamples) {
  const double lambda = 1.3;
  const auto small = mc::empirical_tv_to_poisson(poisson_sample(lambda, 10'000, 1), lambda);
  const auto large = mc::empirical_tv_to_poisson(poisson_sample(lambda, 1'000'000, 1), lambda);
  EXPECT_LT(large.tv, small.tv);
  EXPECT_LT(large.mc_stderr, small.mc_stderr);
  EXPECT_LE(large.tv, 3 * large.mc_stderr);
  EXPECT_LT(large.tv, 0.005);
}

TEST(EmpiricalTv, WithinBoundAtFiftySix) {
  const auto r = mc::run_trials({.n = 50, .ks = {6}, .trials = 100'000, .seed = 8, .workers = 1});
  const auto est = mc::empirical_tv_to_poisson(r.per_k[0].strict, theory::lambda_strict(50, 6));
  EXPECT_LE(est.tv, theory::tv_bound_strict(50, 6) + 3 * est.mc_stderr);
}

TEST(EmpiricalTv, SingleTrialIsDefinedButNoisy) {
  const auto r = mc::run_trials({.n = 30, .ks = {3}, .trials = 1, .seed = 8});
  const auto est = mc::empirical_tv_to_poisson(r.per_k[0].strict, theory::lambda_strict(30, 3));
  EXPECT_TRUE(std::isfinite(est.tv));
  EXPECT_GE(est.tv, 0.0);
  EXPECT_LE(est.tv, 1.0);
  EXPECT_GT(est.mc_stderr, 0.25);
}

TEST(EmpiricalTv, Errors) {
  mc::EmpiricalDistribution empty;
  EXPECT_THROW(mc::empirical_tv_to_poisson(empty, 1.0), Error);
  EXPECT_THROW(mc::empirical_tv_to_poisson(poisson_sample(1.0, 10, 1), 0.0), Error);
}

TEST(CdfEstimate, Basic) {
  mc::EmpiricalDistribution d;
  d.trials = 4;
  d.counts = {{2, 1}, {3, 2}, {5, 1}};
  const auto e = mc::cdf_estimate(d, 3);
  EXPECT_DOUBLE_EQ(e.p, 0.75);
  EXPECT_DOUBLE_EQ(e.std_error, std::sqrt(0.75 * 0.25 / 4));
  EXPECT_EQ(d.median(), 3u);
  EXPECT_DOUBLE_EQ(d.mean(), (2 + 6 + 5) / 4.0);
}

TEST(CoinTrials, LongestHeadRunNearLog2) {
  const auto d = mc::coin_trials(1024, 0.5, 20'000, 4);
  EXPECT_NEAR(d.mean(), 10.0, 2.0);
  EXPECT_EQ(d.statistic, Statistic::LongestHeadRun);
}

TEST(CoinTrials, DeterministicAndBoundaries) {
  const auto a = mc::coin_trials(64, 0.3, 1, 17);
  const auto b = mc::coin_trials(64, 0.3, 1, 17);
  EXPECT_EQ(a.counts, b.counts);
  const auto c = mc::coin_trials(500, 0.5, 3'000, 17, 1);
  const auto d = mc::coin_trials(500, 0.5, 3'000, 17, 4);
  EXPECT_EQ(c.counts, d.counts);
  const auto one = mc::coin_trials(1, 0.5, 1'000, 2);
  for (const auto& [v, cnt] : one.counts) EXPECT_LE(v, 1u);
  EXPECT_EQ(one.counts.size(), 2u);
  EXPECT_THROW(mc::coin_trials(10, 1.0, 10, 1), Error);
  EXPECT_THROW(mc::coin_trials(10, 0.0, 10, 1), Error);
}

}  // namespace
