#pragma once

// Exhaustive enumeration of S_n giving the exact laws of L, M(n,k) and
// M'(n,k). Counts are exact 64-bit integers (n! fits for n <= 20);
// probabilities and means are exact rationals.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "monorun/scan.hpp"

namespace monorun::exact {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultEnumerationCap = 10;
/// Largest n whose n! still fits the 64-bit counters.
inline constexpr std::size_t kCounterCeiling = 20;

struct EnumerationOptions {
  std::size_t cap = kDefaultEnumerationCap;
  unsigned workers = 1;  // shards (one per first element) are spread over this many threads
};

struct ExactPMF {
  std::size_t n = 0;
  std::size_t k = 0;  // 0 for Statistic::Longest
  Statistic statistic = Statistic::Longest;
  std::map<std::uint64_t, std::uint64_t> weights;  // value -> number of permutations
  std::uint64_t total = 0;                         // n!

  std::uint64_t weight(std::uint64_t value) const;
  Rational probability(std::uint64_t value) const;
  Rational mean() const;
};

/// Every law for one n, collected in a single pass over S_n.
class ExactTables {
 public:
  std::size_t n() const noexcept { return n_; }
  std::uint64_t total() const noexcept { return total_; }

  /// Statistic::Longest ignores k. Windows needs 2 <= k <= n, StrictBlocks
  /// needs 2 <= k <= n-1.
  ExactPMF law(Statistic statistic, std::size_t k = 0) const;

 private:
  friend ExactTables enumerate_all(std::size_t n, const EnumerationOptions& options);

  std::size_t n_ = 0;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> longest_;              // [L]
  std::vector<std::vector<std::uint64_t>> windows_;  // [k][M]
  std::vector<std::vector<std::uint64_t>> strict_;   // [k][M']
};

/// Throws Error{CapExceeded} when n > options.cap, Error{Domain} when the cap
/// itself exceeds kCounterCeiling or n == 0.
ExactTables enumerate_all(std::size_t n, const EnumerationOptions& options = {});

ExactPMF enumerate_distribution(std::size_t n, std::size_t k, Statistic statistic,
                                const EnumerationOptions& options = {});

/// weight(0) / n! for Windows or StrictBlocks.
Rational exact_void_probability(std::size_t n, std::size_t k, Statistic statistic,
                                const EnumerationOptions& options = {});

/// Half-L1 distance between an exact pmf and Po(lambda), with the Poisson
/// mass beyond the pmf's largest support value folded in. Evaluated in
/// double precision.
double tv_to_poisson(const ExactPMF& pmf, double lambda);

/// d_TV(law of M'(n,k), Po(lambda_strict(n,k))).
double exact_tv_to_poisson(std::size_t n, std::size_t k, const EnumerationOptions& options = {});

/// (n-k) 2k / (k+1)! as an exact rational.
Rational closed_form_lambda(std::size_t n, std::size_t k);

/// 2 / k! as an exact rational.
Rational closed_form_switch_bound(std::size_t k);

BigInt factorial(std::size_t n);

/// Nearest double.
double to_double(const Rational& r);

}  // namespace monorun::exact
