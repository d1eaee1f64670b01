#include "monorun/scan.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace monorun {

namespace {

void require_nonempty(std::span<const Rank> values) {
  if (values.empty()) fail(ErrorKind::InvalidInput, "empty input");
}

void require_window(std::size_t n, std::size_t k) {
  if (k < 2) fail(ErrorKind::Domain, "window length k must be at least 2");
  if (k > n) fail(ErrorKind::Domain, "window exceeds sample");
}

void require_strict_window(std::size_t n, std::size_t k) {
  if (k < 2) fail(ErrorKind::Domain, "window length k must be at least 2");
  if (k >= n) fail(ErrorKind::Domain, "strict block of span k+1 exceeds sample");
}

}  // namespace

std::string_view to_string(Direction d) {
  return d == Direction::Increasing ? "increasing" : "decreasing";
}

std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::Longest: return "L";
    case Statistic::Windows: return "M";
    case Statistic::StrictBlocks: return "M_strict";
    case Statistic::LongestHeadRun: return "head_run";
  }
  return "?";
}

Statistic parse_statistic(std::string_view name) {
  if (name == "L") return Statistic::Longest;
  if (name == "M") return Statistic::Windows;
  if (name == "M_strict" || name == "M'" || name == "Mstrict") return Statistic::StrictBlocks;
  fail(ErrorKind::InvalidInput, "unknown statistic '" + std::string(name) + "' (expected L, M or M_strict)");
}

PermutationSample::PermutationSample(std::vector<Rank> ranks) : ranks_(std::move(ranks)) {
  const std::size_t n = ranks_.size();
  if (n == 0) fail(ErrorKind::InvalidInput, "empty input");
  std::vector<bool> seen(n + 1, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Rank r = ranks_[i];
    if (r < 1 || r > n) {
      fail(ErrorKind::InvalidInput,
           "value " + std::to_string(r) + " at position " + std::to_string(i + 1) + " is outside 1.." +
               std::to_string(n));
    }
    if (seen[r]) fail(ErrorKind::InvalidInput, "duplicate value " + std::to_string(r));
    seen[r] = true;
  }
}

PermutationSample PermutationSample::identity(std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidInput, "empty input");
  std::vector<Rank> r(n);
  std::iota(r.begin(), r.end(), Rank{1});
  return PermutationSample(std::move(r), Unchecked{});
}

PermutationSample PermutationSample::complement() const {
  const auto n = static_cast<Rank>(ranks_.size());
  std::vector<Rank> r(ranks_.size());
  std::transform(ranks_.begin(), ranks_.end(), r.begin(), [n](Rank x) { return n + 1 - x; });
  return PermutationSample(std::move(r), Unchecked{});
}

RunProfile maximal_run_profile(std::span<const Rank> values) {
  require_nonempty(values);
  RunProfile profile;
  profile.n = values.size();
  for_each_maximal_run(values, [&](std::size_t start, std::size_t len, Direction dir) {
    profile.runs.push_back(Run{start + 1, len, dir});
  });
  return profile;
}

std::size_t longest_monotone_block(std::span<const Rank> values) {
  require_nonempty(values);
  std::size_t longest = 1;
  for_each_maximal_run(values, [&](std::size_t, std::size_t len, Direction) { longest = std::max(longest, len); });
  return longest;
}

std::uint64_t count_monotone_windows(std::span<const Rank> values, std::size_t k) {
  require_nonempty(values);
  require_window(values.size(), k);
  std::uint64_t count = 0;
  for_each_maximal_run(values, [&](std::size_t, std::size_t len, Direction) {
    if (len >= k) count += len - k + 1;
  });
  return count;
}

// A strict block of span k+1 is exactly a maximal run of length >= k that
// does not start at the first position: its predecessor breaks the direction.
std::uint64_t count_strict_blocks(std::span<const Rank> values, std::size_t k) {
  require_nonempty(values);
  require_strict_window(values.size(), k);
  std::uint64_t count = 0;
  for_each_maximal_run(values, [&](std::size_t start, std::size_t len, Direction) {
    if (start > 0 && len >= k) ++count;
  });
  return count;
}

std::vector<StrictBlock> strict_block_positions(std::span<const Rank> values, std::size_t k) {
  require_nonempty(values);
  require_strict_window(values.size(), k);
  std::vector<StrictBlock> blocks;
  for_each_maximal_run(values, [&](std::size_t start, std::size_t len, Direction dir) {
    // 0-based run start == 1-based position of the breaking element
    if (start > 0 && len >= k) blocks.push_back(StrictBlock{start, dir});
  });
  return blocks;
}

BlockCountReport block_counts(std::span<const Rank> values, std::size_t k) {
  require_nonempty(values);
  require_strict_window(values.size(), k);
  BlockCountReport report{values.size(), k, 0, 0, 1};
  for_each_maximal_run(values, [&](std::size_t start, std::size_t len, Direction) {
    report.longest = std::max(report.longest, len);
    if (len >= k) {
      report.windows += len - k + 1;
      if (start > 0) ++report.strict;
    }
  });
  return report;
}

void scan_counts(std::span<const Rank> values, std::span<const std::size_t> ks, MultiCounts& out) {
  require_nonempty(values);
  const std::size_t m = ks.size();
  out.longest = 1;
  out.windows.assign(m, 0);
  out.strict.assign(m, 0);
  for_each_maximal_run(values, [&](std::size_t start, std::size_t len, Direction) {
    if (len > out.longest) out.longest = len;
    for (std::size_t i = 0; i < m; ++i) {
      if (len >= ks[i]) {
        out.windows[i] += len - ks[i] + 1;
        if (start > 0) ++out.strict[i];
      }
    }
  });
}

}  // namespace monorun
