#include "monorun/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "monorun/error.hpp"

namespace monorun::theory {

namespace {

void require_strict_range(std::uint64_t n, std::uint64_t k) {
  if (k < 2 || k + 1 > n) {
    std::ostringstream os;
    os << "(n, k) = (" << n << ", " << k << ") outside 2 <= k <= n-1";
    fail(ErrorKind::Domain, os.str());
  }
}

double as_double(std::uint64_t v) { return static_cast<double>(v); }

double dependence_term(std::uint64_t n, std::uint64_t k) {
  const double m = as_double(n - k);
  const double lb = log_binomial(m, as_double(k));
  if (std::isinf(lb)) return 0.0;
  return std::exp(std::numbers::ln2 + lb - log_factorial(m - 1.0));
}

}  // namespace

double log_factorial(double z) { return std::lgamma(z + 1.0); }

double log_binomial(double a, double b) {
  if (b < 0 || b > a) return -std::numeric_limits<double>::infinity();
  return log_factorial(a) - log_factorial(b) - log_factorial(a - b);
}

double target_length(double n) {
  // n >= e^e, with slack for exp(e) rounding
  if (!(std::log(n) >= std::numbers::e - 1e-12)) {
    fail(ErrorKind::Domain, "target undefined below e^e");
  }
  const double ln = std::log(n);
  return ln / std::log(ln);
}

double lambda_strict(std::uint64_t n, std::uint64_t k) {
  require_strict_range(n, k);
  return std::exp(std::numbers::ln2 + std::log(as_double(n - k)) + std::log(as_double(k)) -
                  log_factorial(as_double(k) + 1.0));
}

double lambda_asymptotic(std::uint64_t n, std::uint64_t k) {
  if (k < 2) fail(ErrorKind::Domain, "k must be at least 2");
  if (n < 1) fail(ErrorKind::Domain, "n must be at least 1");
  return std::exp(std::numbers::ln2 + std::log(as_double(n)) - log_factorial(as_double(k)));
}

TvBound tv_bound_terms(std::uint64_t n, std::uint64_t k) {
  require_strict_range(n, k);
  const double kk = as_double(k);
  TvBound b{};
  b.local_term = std::exp(std::log(2.0 * kk + 4.0 * kk * kk) - log_factorial(kk + 1.0));
  b.coarse_term = std::exp(std::log(6.0) - log_factorial(kk - 1.0));
  b.dependence_term = dependence_term(n, k);
  b.value = std::min(b.local_term, b.coarse_term) + b.dependence_term;
  return b;
}

double tv_bound_strict(std::uint64_t n, std::uint64_t k) { return tv_bound_terms(n, k).value; }

double switch_bound(std::uint64_t k) {
  if (k < 2) fail(ErrorKind::Domain, "k must be at least 2");
  return std::exp(std::numbers::ln2 - log_factorial(as_double(k)));
}

VoidApprox void_probability_approx(std::uint64_t n, std::uint64_t k) {
  const double lambda = lambda_strict(n, k);
  const double head = std::exp(std::log(8.0) - log_factorial(as_double(k) - 1.0));
  return VoidApprox{std::exp(-lambda), head + dependence_term(n, k)};
}

NaiveBoundTerms naive_terms(std::uint64_t n, std::uint64_t k) {
  if (k < 2 || k > n) fail(ErrorKind::Domain, "naive terms require 2 <= k <= n");
  const double lf = log_factorial(as_double(k));
  return NaiveBoundTerms{std::exp(std::numbers::ln2 - lf), std::exp(std::log(4.0 * as_double(k)) - lf),
                         4.0 * (std::numbers::e - 1.0)};
}

PoissonApprox poisson_approx(std::uint64_t n, std::uint64_t k) {
  PoissonApprox p;
  p.n = n;
  p.k = k;
  p.lambda = lambda_strict(n, k);
  p.lambda_asym = lambda_asymptotic(n, k);
  p.tv_bound = tv_bound_strict(n, k);
  const VoidApprox v = void_probability_approx(n, k);
  p.void_prob = v.approx;
  p.void_error_bound = v.error_bound;
  return p;
}

Schedule loglog_schedule() {
  return Schedule{"loglog", [](double n) { return std::log(std::log(n)); }};
}

Schedule parse_schedule(const std::string& name) {
  if (name == "loglog") return loglog_schedule();
  if (name == "sqrt-loglog") {
    return Schedule{"sqrt-loglog", [](double n) { return std::sqrt(std::log(std::log(n))); }};
  }
  if (name == "logloglog") {
    return Schedule{"logloglog", [](double n) { return std::log(std::log(std::log(n))); }};
  }
  fail(ErrorKind::InvalidInput, "unknown schedule '" + name + "' (expected loglog, sqrt-loglog or logloglog)");
}

GammaMode parse_gamma_mode(const std::string& name) {
  if (name == "gamma") return GammaMode::Gamma;
  if (name == "round") return GammaMode::Round;
  fail(ErrorKind::InvalidInput, "unknown gamma mode '" + name + "' (expected gamma or round)");
}

std::string to_string(GammaMode mode) { return mode == GammaMode::Gamma ? "gamma" : "round"; }

WindowApprox window_probability(double n, double x, const Schedule& delta, const Schedule& theta,
                                GammaMode mode) {
  const double t = target_length(n);
  WindowApprox w;
  w.n = n;
  w.x = x;
  w.target = t;
  w.k_upper = t + x;
  w.k_lower = t - x;
  if (!(w.k_upper > 1.0) || !(w.k_lower > 1.0)) {
    fail(ErrorKind::Domain, "window endpoints t(n) +- x must both exceed 1");
  }
  if (mode == GammaMode::Round) {
    w.k_upper = std::round(w.k_upper);
    w.k_lower = std::round(w.k_lower);
  }
  const double log2n = std::log(2.0 * n);
  w.log_alpha = -std::exp(log2n - log_factorial(w.k_upper));
  w.log_beta = -std::exp(log2n - log_factorial(w.k_lower));
  w.alpha = std::exp(w.log_alpha);
  w.beta = std::exp(w.log_beta);
  w.gamma_lo = -t + delta.fn(n);
  w.gamma_hi = t - theta.fn(n);
  w.in_window = w.gamma_lo < x && x < w.gamma_hi;
  w.delta_fn = delta.name;
  w.theta_fn = theta.name;
  return w;
}

double coin_target(double n, double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::Domain, "p must lie in (0, 1)");
  if (!(n >= 2.0)) fail(ErrorKind::Domain, "n must be at least 2");
  return std::log(n) / std::log(1.0 / p);
}

std::size_t coin_longest_run(const std::vector<bool>& heads) {
  if (heads.empty()) fail(ErrorKind::InvalidInput, "empty input");
  std::size_t best = 0;
  std::size_t current = 0;
  for (const bool h : heads) {
    current = h ? current + 1 : 0;
    if (current > best) best = current;
  }
  return best;
}

}  // namespace monorun::theory
