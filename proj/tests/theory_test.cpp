#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "monorun/error.hpp"
#include "monorun/exact.hpp"
#include "monorun/theory.hpp"

namespace {

using namespace monorun;
using namespace monorun::theory;

double exact_factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

TEST(TargetLength, Values) {
  EXPECT_NEAR(target_length(std::exp(std::numbers::e)), std::numbers::e, 1e-12);
  EXPECT_NEAR(target_length(1e4), 4.1482, 1e-4);
  EXPECT_NEAR(target_length(1e7), 5.798, 1e-3);
  EXPECT_NO_THROW(target_length(16));
}

TEST(TargetLength, UndefinedBelowThreshold) {
  EXPECT_THROW(target_length(15), Error);
  EXPECT_THROW(target_length(2), Error);
  try {
    target_length(10);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
    EXPECT_STREQ(e.what(), "target undefined below e^e");
  }
}

TEST(LambdaStrict, Values) {
  EXPECT_NEAR(lambda_strict(20, 4), 16.0 / 15.0, 1e-14);
  for (std::uint64_t k = 2; k <= 15; ++k) {
    EXPECT_NEAR(lambda_strict(k + 1, k), 2.0 * k / exact_factorial(k + 1), 1e-14);
  }
  EXPECT_NEAR(lambda_strict(10000, 9), 9991.0 * 18.0 / 3628800.0, 1e-15);
  EXPECT_THROW(lambda_strict(5, 5), Error);
  EXPECT_THROW(lambda_strict(5, 1), Error);
}

TEST(LambdaStrict, LogSpaceAgreesWithExactRational) {
  for (std::uint64_t k = 2; k <= 20; ++k) {
    for (std::uint64_t n : {k + 1, k + 7, 3 * k, 1000 * k}) {
      const double exact = exact::to_double(exact::closed_form_lambda(n, k));
      EXPECT_NEAR(lambda_strict(n, k) / exact, 1.0, 1e-12) << "n=" << n << " k=" << k;
    }
  }
  // k! beyond 64-bit range
  EXPECT_NEAR(lambda_strict(1'000'000'000'000, 30) / exact::to_double(exact::closed_form_lambda(1'000'000'000'000, 30)),
              1.0, 1e-12);
}

TEST(LogFactorial, AgreesWithIntegerFactorial) {
  for (int k = 0; k <= 20; ++k) {
    const double exact = exact::factorial(k).convert_to<double>();
    EXPECT_NEAR(std::exp(log_factorial(k)) / exact, 1.0, 1e-12) << k;
  }
}

TEST(LambdaAsymptotic, Values) {
  EXPECT_NEAR(lambda_asymptotic(10000, 9), 20000.0 / 362880.0, 1e-15);
  EXPECT_NEAR(lambda_asymptotic(10, 2), 10.0, 1e-12);
  const double ratio = lambda_strict(1'000'000, 15) / lambda_asymptotic(1'000'000, 15);
  EXPECT_GT(ratio, 0.9);
  EXPECT_LT(ratio, 1.0);
  EXPECT_NEAR(ratio, (1.0 - 15.0 / 1e6) * 15.0 / 16.0, 1e-12);
  EXPECT_THROW(lambda_asymptotic(10, 1), Error);
}

TEST(LambdaAsymptotic, RatioTendsToOne) {
  double previous = 0;
  for (std::uint64_t k = 5; k <= 80; k += 5) {
    const std::uint64_t n = k * k * k;
    const double r = lambda_strict(n, k) / lambda_asymptotic(n, k);
    EXPECT_GT(r, previous);
    previous = r;
  }
  EXPECT_GT(previous, 0.98);
}

TEST(TvBound, Values) {
  const auto b = tv_bound_terms(50, 6);
  EXPECT_NEAR(b.local_term, 156.0 / 5040.0, 1e-15);
  EXPECT_LT(b.dependence_term, 1e-30);
  EXPECT_NEAR(b.value, 156.0 / 5040.0, 1e-14);

  const auto small = tv_bound_terms(7, 3);
  EXPECT_NEAR(small.local_term, 1.75, 1e-14);
  EXPECT_NEAR(small.coarse_term, 3.0, 1e-14);
  EXPECT_NEAR(small.dependence_term, 2.0 * 4.0 / 6.0, 1e-14);
  EXPECT_NEAR(tv_bound_strict(7, 3), 1.75 + 8.0 / 6.0, 1e-13);  // exceeds 1; reported as-is
}

TEST(TvBound, LocalFormIsAlwaysTheTighterOne) {
  for (std::uint64_t k = 2; k <= 60; ++k) {
    const auto b = tv_bound_terms(10 * k, k);
    EXPECT_LE(b.local_term, b.coarse_term);
    EXPECT_GE(b.value, 0.0);
  }
}

TEST(TvBound, DependenceTermVanishesWhenNoTwoBlocksFit) {
  // C(n-k, k) = 0 for n - k < k
  EXPECT_EQ(tv_bound_terms(8, 5).dependence_term, 0.0);
  EXPECT_EQ(tv_bound_terms(9, 8).dependence_term, 0.0);
}

TEST(SwitchBound, Values) {
  EXPECT_NEAR(switch_bound(4), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(switch_bound(2), 1.0, 1e-15);
  EXPECT_NEAR(switch_bound(10), 2.0 / 3628800.0, 1e-20);
  EXPECT_THROW(switch_bound(1), Error);
}

TEST(VoidApprox, Values) {
  const auto v = void_probability_approx(10000, 9);
  EXPECT_NEAR(v.approx, std::exp(-9991.0 * 18.0 / 3628800.0), 1e-15);
  EXPECT_NEAR(v.approx, 0.95165, 1e-5);
  EXPECT_NEAR(v.error_bound, 8.0 / 40320.0, 1e-15);

  const auto w = void_probability_approx(8, 5);
  EXPECT_NEAR(w.approx, std::exp(-1.0 / 24.0), 1e-15);
  EXPECT_NEAR(w.error_bound, 8.0 / 24.0, 1e-15);
}

TEST(VoidApprox, ErrorBoundDominatesTvBound) {
  for (std::uint64_t k = 2; k <= 30; ++k) {
    for (std::uint64_t n : {k + 1, 2 * k, 5 * k, 100 * k}) {
      EXPECT_GE(void_probability_approx(n, k).error_bound, tv_bound_strict(n, k));
    }
  }
}

// For n >= 3k the first error term dominates the dependence term.
TEST(VoidApprox, FirstTermDominatesWhenNAtLeastThreeK) {
  for (std::uint64_t k = 2; k <= 40; ++k) {
    for (std::uint64_t n = 3 * k; n <= 3 * k + 200; n += 7) {
      const double head = 8.0 / std::exp(log_factorial(static_cast<double>(k) - 1));
      const double dep = std::exp(log_binomial(double(n - k), double(k)) - log_factorial(double(n - k) - 1));
      EXPECT_GE(head, dep) << "n=" << n << " k=" << k;
    }
  }
}

TEST(NaiveTerms, Values) {
  const auto t = naive_terms(20, 5);
  EXPECT_NEAR(t.t1_over_lambda, 2.0 / 120.0, 1e-15);
  EXPECT_NEAR(t.t2_over_lambda, 20.0 / 120.0, 1e-15);
  EXPECT_NEAR(t.t3_over_lambda_bound, 6.873, 1e-3);
  EXPECT_NEAR(t.t3_over_lambda_bound, 4.0 * (std::numbers::e - 1.0), 1e-15);
  const auto big = naive_terms(1000, 40);
  EXPECT_LT(big.t1_over_lambda, 1e-40);
  EXPECT_LT(big.t2_over_lambda, 1e-40);
  EXPECT_EQ(big.t3_over_lambda_bound, t.t3_over_lambda_bound);
  EXPECT_NO_THROW(naive_terms(5, 5));
  EXPECT_THROW(naive_terms(5, 6), Error);
}

TEST(PoissonApprox, Bundle) {
  const auto p = poisson_approx(20, 4);
  EXPECT_NEAR(p.lambda, 16.0 / 15.0, 1e-14);
  EXPECT_NEAR(p.lambda_asym, 40.0 / 24.0, 1e-14);
  EXPECT_NEAR(p.void_prob, std::exp(-16.0 / 15.0), 1e-14);
  EXPECT_GE(p.void_error_bound, p.tv_bound);
}

TEST(Window, ZeroHalfWidthGivesZero) {
  const auto sched = loglog_schedule();
  for (double n : {16.0, 100.0, 1e4, 1e8}) {
    const auto w = window_probability(n, 0.0, sched, sched);
    EXPECT_EQ(w.alpha, w.beta);
    EXPECT_EQ(w.approx_prob(), 0.0);
  }
}

TEST(Window, MonotoneInHalfWidth) {
  const auto sched = loglog_schedule();
  const auto w = window_probability(1e4, 2.0, sched, sched);
  EXPECT_GT(w.alpha, 0.0);
  EXPECT_LT(w.alpha, 1.0);
  // beta = exp(-2n / 2.148!) ~ e^-8700 underflows; its log does not
  EXPECT_GE(w.beta, 0.0);
  EXPECT_LT(w.beta, 1.0);
  EXPECT_TRUE(std::isfinite(w.log_beta));
  EXPECT_LT(w.log_beta, w.log_alpha);
  EXPECT_LT(w.log_alpha, 0.0);
  EXPECT_GT(w.alpha, w.beta);
  EXPECT_NEAR(w.gamma_lo, -target_length(1e4) + std::log(std::log(1e4)), 1e-12);
  EXPECT_NEAR(w.gamma_hi, target_length(1e4) - std::log(std::log(1e4)), 1e-12);
  // the admissible range at n = 1e4 is about (-1.93, 1.93); x = 2 is flagged
  EXPECT_FALSE(w.in_window);
  EXPECT_TRUE(window_probability(1e4, 1.0, sched, sched).in_window);
}

TEST(Window, UsesGammaExtension) {
  const auto sched = loglog_schedule();
  const auto w = window_probability(1e4, 0.5, sched, sched);
  const double t = target_length(1e4);
  EXPECT_NEAR(w.alpha, std::exp(-2e4 / std::tgamma(t + 0.5 + 1.0)), 1e-14);
  EXPECT_NEAR(w.beta, std::exp(-2e4 / std::tgamma(t - 0.5 + 1.0)), 1e-14);
  const auto r = window_probability(1e4, 0.5, sched, sched, GammaMode::Round);
  EXPECT_EQ(r.k_upper, std::round(t + 0.5));
  EXPECT_NEAR(r.alpha, std::exp(-2e4 / exact_factorial(static_cast<int>(std::round(t + 0.5)))), 1e-14);
}

TEST(Window, RejectsEndpointsBelowOne) {
  const auto sched = loglog_schedule();
  EXPECT_THROW(window_probability(1e4, 3.5, sched, sched), Error);
  EXPECT_THROW(window_probability(10, 0.0, sched, sched), Error);
}

TEST(Schedules, Parse) {
  EXPECT_EQ(parse_schedule("loglog").name, "loglog");
  EXPECT_NEAR(parse_schedule("sqrt-loglog").fn(1e4), std::sqrt(std::log(std::log(1e4))), 1e-15);
  EXPECT_THROW(parse_schedule("nope"), Error);
  EXPECT_EQ(parse_gamma_mode("round"), GammaMode::Round);
  EXPECT_THROW(parse_gamma_mode("floor"), Error);
}

TEST(Coin, TargetAndLongestRun) {
  EXPECT_NEAR(coin_target(1024, 0.5), 10.0, 1e-12);
  EXPECT_THROW(coin_target(1024, 0.0), Error);
  EXPECT_THROW(coin_target(1024, 1.0), Error);
  const std::vector<bool> hhthhht = {true, true, false, true, true, true, false};
  EXPECT_EQ(coin_longest_run(hhthhht), 3u);
  EXPECT_EQ(coin_longest_run(std::vector<bool>(9, false)), 0u);
  EXPECT_EQ(coin_longest_run(std::vector<bool>(9, true)), 9u);
  EXPECT_THROW(coin_longest_run({}), Error);
}

}  // namespace
