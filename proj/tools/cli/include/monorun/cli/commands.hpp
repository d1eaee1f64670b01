#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monorun/cli/record.hpp"
#include "monorun/convergence.hpp"
#include "monorun/montecarlo.hpp"
#include "monorun/scan.hpp"
#include "monorun/theory.hpp"

namespace monorun::cli {

/// Parses whitespace- or comma-separated positive integers. Anything else,
/// including an empty list, raises Error{InvalidInput}.
std::vector<Rank> parse_permutation(const std::vector<std::string>& tokens);

OutputRecord cmd_scan(const std::vector<Rank>& values, const std::vector<std::size_t>& ks);

struct ExactArgs {
  std::size_t n = 0;
  std::vector<std::size_t> ks;
  Statistic statistic = Statistic::Windows;
  exact::EnumerationOptions enumeration;
};

OutputRecord cmd_exact(const ExactArgs& args);

struct BoundsArgs {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> ks;
  std::optional<double> x;
  theory::GammaMode gamma_mode = theory::GammaMode::Gamma;
  std::string delta = "loglog";
  std::string theta = "loglog";
};

OutputRecord cmd_bounds(const BoundsArgs& args);

OutputRecord cmd_simulate(const mc::TrialConfig& config);

struct ConvergeArgs {
  std::uint64_t grid_min = 16;
  std::uint64_t grid_max = 100'000;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = mc::kDefaultSeed;
  unsigned workers = 1;
  double x = 1.0;
  theory::GammaMode gamma_mode = theory::GammaMode::Gamma;
  std::string delta = "loglog";
  std::string theta = "loglog";
  bool coin_baseline = true;
};

OutputRecord cmd_converge(const ConvergeArgs& args);

}  // namespace monorun::cli
