#include "monorun/exact.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>
#include <thread>

#include "monorun/error.hpp"
#include "monorun/theory.hpp"

namespace monorun::exact {

namespace {

void require_law_range(std::size_t n, std::size_t k, Statistic statistic) {
  switch (statistic) {
    case Statistic::Longest: return;
    case Statistic::Windows:
      if (k < 2 || k > n) fail(ErrorKind::Domain, "window length must satisfy 2 <= k <= n");
      return;
    case Statistic::StrictBlocks:
      if (k < 2 || k + 1 > n) fail(ErrorKind::Domain, "strict block length must satisfy 2 <= k <= n-1");
      return;
    case Statistic::LongestHeadRun: break;
  }
  fail(ErrorKind::Domain, "statistic is not defined on permutations");
}

struct Counters {
  std::vector<std::uint64_t> longest;
  std::vector<std::vector<std::uint64_t>> windows;
  std::vector<std::vector<std::uint64_t>> strict;
  std::uint64_t total = 0;

  explicit Counters(std::size_t n)
      : longest(n + 1, 0), windows(n + 1, std::vector<std::uint64_t>(n + 1, 0)),
        strict(n + 1, std::vector<std::uint64_t>(n + 1, 0)) {}

  void merge(const Counters& other) {
    total += other.total;
    for (std::size_t v = 0; v < longest.size(); ++v) longest[v] += other.longest[v];
    for (std::size_t k = 0; k < windows.size(); ++k) {
      for (std::size_t v = 0; v < windows[k].size(); ++v) {
        windows[k][v] += other.windows[k][v];
        strict[k][v] += other.strict[k][v];
      }
    }
  }
};

// All permutations of 1..n whose first entry is `first`.
void enumerate_shard(std::size_t n, Rank first, Counters& c) {
  std::vector<Rank> perm;
  perm.reserve(n);
  perm.push_back(first);
  for (Rank v = 1; v <= n; ++v) {
    if (v != first) perm.push_back(v);
  }
  std::vector<std::size_t> ks;
  for (std::size_t k = 2; k + 1 <= n; ++k) ks.push_back(k);
  MultiCounts mc;
  do {
    scan_counts(perm, ks, mc);
    ++c.total;
    ++c.longest[mc.longest];
    for (std::size_t i = 0; i < ks.size(); ++i) {
      ++c.windows[ks[i]][mc.windows[i]];
      ++c.strict[ks[i]][mc.strict[i]];
    }
    if (n >= 2) ++c.windows[n][mc.longest == n ? 1 : 0];
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
}

ExactPMF to_pmf(const std::vector<std::uint64_t>& counts, std::size_t n, std::size_t k, Statistic s,
                std::uint64_t total) {
  ExactPMF pmf;
  pmf.n = n;
  pmf.k = k;
  pmf.statistic = s;
  pmf.total = total;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] != 0) pmf.weights.emplace(v, counts[v]);
  }
  return pmf;
}

}  // namespace

std::uint64_t ExactPMF::weight(std::uint64_t value) const {
  const auto it = weights.find(value);
  return it == weights.end() ? 0 : it->second;
}

Rational ExactPMF::probability(std::uint64_t value) const {
  return Rational(BigInt(weight(value)), BigInt(total));
}

Rational ExactPMF::mean() const {
  BigInt sum = 0;
  for (const auto& [v, w] : weights) sum += BigInt(v) * BigInt(w);
  return Rational(sum, BigInt(total));
}

ExactPMF ExactTables::law(Statistic statistic, std::size_t k) const {
  require_law_range(n_, k, statistic);
  switch (statistic) {
    case Statistic::Longest: return to_pmf(longest_, n_, 0, statistic, total_);
    case Statistic::Windows: return to_pmf(windows_[k], n_, k, statistic, total_);
    default: return to_pmf(strict_[k], n_, k, statistic, total_);
  }
}

ExactTables enumerate_all(std::size_t n, const EnumerationOptions& options) {
  if (options.cap > kCounterCeiling) {
    fail(ErrorKind::Domain, "enumeration cap " + std::to_string(options.cap) + " exceeds the 64-bit counter ceiling " +
                                std::to_string(kCounterCeiling));
  }
  if (n == 0) fail(ErrorKind::Domain, "n must be at least 1");
  if (n > options.cap) {
    fail(ErrorKind::CapExceeded, "enumeration cap exceeded: n = " + std::to_string(n) + " > " +
                                     std::to_string(options.cap));
  }

  const unsigned workers = std::clamp<unsigned>(options.workers, 1, static_cast<unsigned>(n));
  std::vector<Counters> partial(workers, Counters(n));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t first = 1 + w; first <= n; first += workers) {
        enumerate_shard(n, static_cast<Rank>(first), partial[w]);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Counters merged(n);
  for (const auto& p : partial) merged.merge(p);

  ExactTables t;
  t.n_ = n;
  t.total_ = merged.total;
  t.longest_ = std::move(merged.longest);
  t.windows_ = std::move(merged.windows);
  t.strict_ = std::move(merged.strict);
  return t;
}

ExactPMF enumerate_distribution(std::size_t n, std::size_t k, Statistic statistic,
                                const EnumerationOptions& options) {
  require_law_range(n, k, statistic);
  return enumerate_all(n, options).law(statistic, k);
}

Rational exact_void_probability(std::size_t n, std::size_t k, Statistic statistic,
                                const EnumerationOptions& options) {
  if (statistic != Statistic::Windows && statistic != Statistic::StrictBlocks) {
    fail(ErrorKind::Domain, "void probability is defined for M and M_strict");
  }
  return enumerate_distribution(n, k, statistic, options).probability(0);
}

double tv_to_poisson(const ExactPMF& pmf, double lambda) {
  if (!(lambda > 0.0)) fail(ErrorKind::Domain, "Poisson mean must be positive");
  const std::uint64_t top = pmf.weights.empty() ? 0 : pmf.weights.rbegin()->first;
  const double total = static_cast<double>(pmf.total);
  double q = std::exp(-lambda);
  double sum = 0.0;
  for (std::uint64_t v = 0; v <= top; ++v) {
    if (v > 0) q *= lambda / static_cast<double>(v);
    sum += std::abs(static_cast<double>(pmf.weight(v)) / total - q);
  }
  // Poisson tail beyond the support, summed term by term
  double tail = 0.0;
  for (std::uint64_t v = top + 1;; ++v) {
    q *= lambda / static_cast<double>(v);
    tail += q;
    if (q < 1e-300 || (static_cast<double>(v) > lambda && q < tail * 1e-17)) break;
  }
  return 0.5 * (sum + tail);
}

double exact_tv_to_poisson(std::size_t n, std::size_t k, const EnumerationOptions& options) {
  const ExactPMF pmf = enumerate_distribution(n, k, Statistic::StrictBlocks, options);
  return tv_to_poisson(pmf, theory::lambda_strict(n, k));
}

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational closed_form_lambda(std::size_t n, std::size_t k) {
  if (k < 2 || k + 1 > n) fail(ErrorKind::Domain, "lambda requires 2 <= k <= n-1");
  return Rational(BigInt(n - k) * 2 * k, factorial(k + 1));
}

Rational closed_form_switch_bound(std::size_t k) {
  if (k < 2) fail(ErrorKind::Domain, "switch bound requires k >= 2");
  return Rational(BigInt(2), factorial(k));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace monorun::exact
