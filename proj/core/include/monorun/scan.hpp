#pragma once

// Single-pass scanners over the ascent/descent stream of a permutation.
//
// A monotone block is a contiguous, strictly increasing or strictly
// decreasing segment. All counts come from the decomposition of the sample
// into maximal monotone runs; consecutive runs share their turning point.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "monorun/error.hpp"

namespace monorun {

using Rank = std::uint32_t;

enum class Direction : std::uint8_t { Increasing, Decreasing };

std::string_view to_string(Direction d);

/// Statistic tags shared by the exact and Monte Carlo laws.
enum class Statistic : std::uint8_t {
  Longest,         // L: longest monotone block
  Windows,         // M(n,k): overlapping monotone windows of length k
  StrictBlocks,    // M'(n,k): strict blocks of total span k+1
  LongestHeadRun,  // coin-toss baseline
};

std::string_view to_string(Statistic s);
Statistic parse_statistic(std::string_view name);

/// A permutation of {1..n} stored as ranks. Construction validates the
/// bijection; the scanners below accept any span of pairwise distinct values.
class PermutationSample {
 public:
  /// Throws Error{InvalidInput} unless `ranks` is a permutation of 1..n, n >= 1.
  explicit PermutationSample(std::vector<Rank> ranks);

  static PermutationSample identity(std::size_t n);

  std::span<const Rank> ranks() const noexcept { return ranks_; }
  std::size_t size() const noexcept { return ranks_.size(); }

  /// x -> n+1-x
  PermutationSample complement() const;

 private:
  struct Unchecked {};
  PermutationSample(std::vector<Rank> ranks, Unchecked) : ranks_(std::move(ranks)) {}

  std::vector<Rank> ranks_;
};

struct Run {
  std::size_t start;   // 1-based
  std::size_t length;  // >= 2
  Direction direction;

  friend bool operator==(const Run&, const Run&) = default;
};

struct RunProfile {
  std::size_t n = 0;
  std::vector<Run> runs;
};

/// Strict block whose breaking element sits at 1-based position `start`;
/// the block itself occupies start+1 .. start+k.
struct StrictBlock {
  std::size_t start;
  Direction direction;

  friend bool operator==(const StrictBlock&, const StrictBlock&) = default;
};

struct BlockCountReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t windows = 0;  // M
  std::uint64_t strict = 0;   // M'
  std::size_t longest = 0;    // L
};

/// Calls `visit(start0, length, direction)` for each maximal run, left to
/// right, with a 0-based start. Emits nothing when values.size() < 2.
template <class Visitor>
void for_each_maximal_run(std::span<const Rank> values, Visitor&& visit) {
  const std::size_t n = values.size();
  if (n < 2) return;
  std::size_t start = 0;
  bool up = values[1] > values[0];
  for (std::size_t i = 2; i < n; ++i) {
    const bool step_up = values[i] > values[i - 1];
    if (step_up != up) {
      visit(start, i - start, up ? Direction::Increasing : Direction::Decreasing);
      start = i - 1;
      up = step_up;
    }
  }
  visit(start, n - start, up ? Direction::Increasing : Direction::Decreasing);
}

RunProfile maximal_run_profile(std::span<const Rank> values);

/// 1 for n = 1, otherwise the longest maximal run.
std::size_t longest_monotone_block(std::span<const Rank> values);

/// M(n,k). Requires 2 <= k <= n.
std::uint64_t count_monotone_windows(std::span<const Rank> values, std::size_t k);

/// M'(n,k). Requires 2 <= k <= n-1. Blocks starting at position 1 have no
/// preceding element and are not counted.
std::uint64_t count_strict_blocks(std::span<const Rank> values, std::size_t k);

std::vector<StrictBlock> strict_block_positions(std::span<const Rank> values, std::size_t k);

/// L, M and M' for one k in a single pass. Requires 2 <= k <= n-1.
BlockCountReport block_counts(std::span<const Rank> values, std::size_t k);

/// L plus M and M' for every k in `ks`, from one pass. Each k must satisfy
/// 2 <= k <= n-1. Output vectors are parallel to `ks`.
struct MultiCounts {
  std::size_t longest = 0;
  std::vector<std::uint64_t> windows;
  std::vector<std::uint64_t> strict;
};

void scan_counts(std::span<const Rank> values, std::span<const std::size_t> ks, MultiCounts& out);

}  // namespace monorun
