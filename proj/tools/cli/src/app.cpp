#include "monorun/cli/app.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "monorun/cli/commands.hpp"
#include "monorun/error.hpp"

namespace monorun::cli {

namespace {

int code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return exit_code::kInvalidInput;
    case ErrorKind::Domain: return exit_code::kDomain;
    case ErrorKind::CapExceeded: return exit_code::kCapExceeded;
    case ErrorKind::InvariantViolation: return exit_code::kInvariantViolation;
  }
  return exit_code::kFailure;
}

template <class T>
void reject_duplicates(const std::vector<T>& ks) {
  std::set<T> seen;
  for (const T k : ks) {
    if (!seen.insert(k).second) fail(ErrorKind::InvalidInput, "duplicate --k value " + std::to_string(k));
  }
}

std::size_t enumeration_cap(std::ostream& err) {
  const char* env = std::getenv("MONORUN_ENUM_CAP");
  if (env == nullptr || *env == '\0') return exact::kDefaultEnumerationCap;
  std::size_t cap = 0;
  std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
  if (ec != std::errc{} || ptr != s.data() + s.size() || cap == 0) {
    fail(ErrorKind::InvalidInput, "MONORUN_ENUM_CAP must be a positive integer, got '" + std::string(s) + "'");
  }
  err << "warning: MONORUN_ENUM_CAP=" << cap << " overrides the default enumeration cap of "
      << exact::kDefaultEnumerationCap << "\n";
  return cap;
}

std::vector<std::string> read_tokens(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw std::ios_base::failure("cannot open input file '" + path + "'");
    in = &file;
  }
  std::vector<std::string> tokens;
  for (std::string line; std::getline(*in, line);) tokens.push_back(line);
  return tokens;
}

struct Common {
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--out", c.out, "Write output to FILE instead of stdout");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Consecutive monotone blocks in random permutations", "monorun"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "monorun 0.1.0");

  Common common;

  // scan
  auto* scan = app.add_subcommand("scan", "Runs, L, M and M' of one permutation");
  std::vector<std::string> scan_tokens;
  std::string scan_file;
  std::vector<std::size_t> scan_ks;
  scan->add_option("values", scan_tokens, "Permutation of 1..n, space or comma separated");
  scan->add_option("--file", scan_file, "Read the permutation from FILE ('-' for stdin)");
  scan->add_option("--k", scan_ks, "Block length (repeatable)")->delimiter(',');
  add_common(scan, common);

  // exact
  auto* exact_cmd = app.add_subcommand("exact", "Exact laws by enumerating S_n");
  ExactArgs exact_args;
  std::string exact_stat = "M";
  exact_cmd->add_option("--n", exact_args.n, "Permutation length")->required();
  exact_cmd->add_option("--k", exact_args.ks, "Block length (repeatable)")->delimiter(',');
  exact_cmd->add_option("--statistic", exact_stat, "L, M or M_strict")
      ->check(CLI::IsMember({"L", "M", "M_strict"}))
      ->capture_default_str();
  exact_cmd->add_option("--workers", exact_args.enumeration.workers, "Enumeration threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(exact_cmd, common);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Poisson parameter and error bounds");
  BoundsArgs bounds_args;
  double bounds_x = 0;
  std::string bounds_gamma = "gamma";
  bounds->add_option("--n", bounds_args.n, "Permutation length")->required();
  bounds->add_option("--k", bounds_args.ks, "Block length (repeatable)")->delimiter(',');
  auto* bounds_x_opt = bounds->add_option("--x", bounds_x, "Half-width of the window around ln n / ln ln n");
  bounds->add_option("--gamma-mode", bounds_gamma, "Non-integer factorials: gamma or round")
      ->check(CLI::IsMember({"gamma", "round"}))
      ->capture_default_str();
  bounds->add_option("--delta", bounds_args.delta, "Delta schedule")->capture_default_str();
  bounds->add_option("--theta", bounds_args.theta, "Theta schedule")->capture_default_str();
  add_common(bounds, common);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo laws of L, M and M'");
  mc::TrialConfig sim;
  sim.trials = 100'000;
  simulate->add_option("--n", sim.n, "Permutation length")->required();
  simulate->add_option("--k", sim.ks, "Block length (repeatable)")->delimiter(',');
  simulate->add_option("--trials", sim.trials, "Number of permutations")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  simulate->add_option("--workers", sim.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(simulate, common);

  // converge
  auto* converge = app.add_subcommand("converge", "Growth diagnostics along n = ceil(e^m)");
  ConvergeArgs conv;
  std::uint64_t conv_trials = 0;
  std::string conv_gamma = "gamma";
  bool no_coin = false;
  converge->add_option("--grid-min", conv.grid_min, "Smallest n")->capture_default_str();
  converge->add_option("--grid-max", conv.grid_max, "Largest n")->capture_default_str();
  auto* conv_trials_opt =
      converge->add_option("--trials", conv_trials, "Trials per grid point (default: budget / n, clamped)");
  converge->add_option("--seed", conv.seed, "Random seed")->capture_default_str();
  converge->add_option("--workers", conv.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  converge->add_option("--x", conv.x, "Half-width of the window")->capture_default_str();
  converge->add_option("--gamma-mode", conv_gamma, "gamma or round")
      ->check(CLI::IsMember({"gamma", "round"}))
      ->capture_default_str();
  converge->add_option("--delta", conv.delta, "Delta schedule")->capture_default_str();
  converge->add_option("--theta", conv.theta, "Theta schedule")->capture_default_str();
  converge->add_flag("--no-coin", no_coin, "Skip the coin-toss baseline");
  add_common(converge, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kInvalidInput;
  }

  OutputRecord record;
  try {
    if (*scan) {
      reject_duplicates(scan_ks);
      if (!scan_file.empty() && !scan_tokens.empty()) {
        fail(ErrorKind::InvalidInput, "give the permutation either inline or with --file, not both");
      }
      if (!scan_file.empty()) scan_tokens = read_tokens(scan_file);
      record = cmd_scan(parse_permutation(scan_tokens), scan_ks);
    } else if (*exact_cmd) {
      reject_duplicates(exact_args.ks);
      exact_args.statistic = parse_statistic(exact_stat);
      exact_args.enumeration.cap = enumeration_cap(err);
      record = cmd_exact(exact_args);
    } else if (*bounds) {
      reject_duplicates(bounds_args.ks);
      if (*bounds_x_opt) bounds_args.x = bounds_x;
      bounds_args.gamma_mode = theory::parse_gamma_mode(bounds_gamma);
      record = cmd_bounds(bounds_args);
    } else if (*simulate) {
      reject_duplicates(sim.ks);
      record = cmd_simulate(sim);
    } else if (*converge) {
      if (*conv_trials_opt) conv.trials = conv_trials;
      conv.gamma_mode = theory::parse_gamma_mode(conv_gamma);
      conv.coin_baseline = !no_coin;
      record = cmd_converge(conv);
    }
  } catch (const Error& e) {
    err << "monorun: " << e.what() << "\n";
    return code_for(e.kind());
  } catch (const std::ios_base::failure& e) {
    err << "monorun: " << e.what() << "\n";
    return exit_code::kIo;
  } catch (const std::exception& e) {
    err << "monorun: " << e.what() << "\n";
    return exit_code::kFailure;
  }

  std::ostringstream text;
  write(text, record, parse_format(common.format));
  if (common.out.empty()) {
    out << text.str() << std::flush;
    return out ? exit_code::kOk : exit_code::kIo;
  }
  std::ofstream file(common.out, std::ios::binary);
  file << text.str();
  file.close();
  if (!file) {
    err << "monorun: cannot write '" << common.out << "'\n";
    return exit_code::kIo;
  }
  return exit_code::kOk;
}

}  // namespace monorun::cli
