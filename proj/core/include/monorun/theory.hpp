#pragma once

// Closed-form Poisson approximation for monotone-block counts.
//
// Every factorial and binomial is evaluated through std::lgamma so that
// k > 20 and n in the millions stay finite. Exact arithmetic lives in the
// enumeration oracle (exact.hpp), not here.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace monorun::theory {

/// ln(z!) = lgamma(z + 1); z may be non-integer.
double log_factorial(double z);

/// ln C(a, b); -inf when b > a.
double log_binomial(double a, double b);

/// ln n / ln ln n. Defined for n >= e^e, where the ratio stops decreasing.
double target_length(double n);

/// E[M'(n,k)] = (n-k) 2k / (k+1)!. Requires 2 <= k <= n-1.
double lambda_strict(std::uint64_t n, std::uint64_t k);

/// 2n / k!, the large-n form of lambda_strict. Requires k >= 2, n >= 1.
double lambda_asymptotic(std::uint64_t n, std::uint64_t k);

/// Pieces of the Stein-Chen total-variation bound for M'(n,k).
struct TvBound {
  double local_term;       // (2k + 4k^2) / (k+1)!
  double coarse_term;      // 6 / (k-1)!, a looser majorant of local_term
  double dependence_term;  // 2 C(n-k, k) / (n-k-1)!
  double value;            // min(local, coarse) + dependence
};

TvBound tv_bound_terms(std::uint64_t n, std::uint64_t k);
double tv_bound_strict(std::uint64_t n, std::uint64_t k);

/// |P(M=0) - P(M'=0)| <= 2/k!. Requires k >= 2.
double switch_bound(std::uint64_t k);

struct VoidApprox {
  double approx;       // exp(-lambda_strict)
  double error_bound;  // 8/(k-1)! + 2 C(n-k,k)/(n-k-1)!
};

VoidApprox void_probability_approx(std::uint64_t n, std::uint64_t k);

/// Bound terms for the unmodified overlapping count M(n,k), divided by
/// lambda. The third term does not vanish as k grows.
struct NaiveBoundTerms {
  double t1_over_lambda;        // 2/k!
  double t2_over_lambda;        // 4k/k!
  double t3_over_lambda_bound;  // 4(e-1)
};

NaiveBoundTerms naive_terms(std::uint64_t n, std::uint64_t k);

struct PoissonApprox {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  double lambda = 0;
  double lambda_asym = 0;
  double tv_bound = 0;
  double void_prob = 0;
  double void_error_bound = 0;
};

PoissonApprox poisson_approx(std::uint64_t n, std::uint64_t k);

/// Divergent schedule used for the endpoints of the admissible x-range.
struct Schedule {
  std::string name;
  std::function<double(double)> fn;
};

Schedule loglog_schedule();
Schedule parse_schedule(const std::string& name);

enum class GammaMode {
  Gamma,  // (t +- x)! through the gamma function
  Round,  // round t +- x to the nearest integer first
};

GammaMode parse_gamma_mode(const std::string& name);
std::string to_string(GammaMode mode);

/// Two-sided distributional window for L_n around the target length t(n):
/// P(|L_n - t(n)| <= x) ~ alpha - beta.
struct WindowApprox {
  double n = 0;
  double x = 0;
  double target = 0;
  double k_upper = 0;  // t + x, after rounding in Round mode
  double k_lower = 0;  // t - x
  double alpha = 0;    // exp(-2n / k_upper!)
  double beta = 0;     // exp(-2n / k_lower!)
  double log_alpha = 0;  // alpha and beta underflow long before their logs do
  double log_beta = 0;
  double gamma_lo = 0;
  double gamma_hi = 0;
  bool in_window = false;  // gamma_lo < x < gamma_hi
  std::string delta_fn;
  std::string theta_fn;

  double approx_prob() const { return alpha - beta; }
};

/// Requires n >= e^e and both t(n) +- x > 1. An x outside (gamma_lo,
/// gamma_hi) is reported through in_window, not rejected.
WindowApprox window_probability(double n, double x, const Schedule& delta, const Schedule& theta,
                                GammaMode mode = GammaMode::Gamma);

/// log_{1/p} n
double coin_target(double n, double p);

/// Longest run of heads (`true`); 0 when there is none. Empty input throws.
std::size_t coin_longest_run(const std::vector<bool>& heads);

}  // namespace monorun::theory
