#include "monorun/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <string_view>

#include "monorun/error.hpp"
#include "monorun/exact.hpp"

namespace monorun::cli {

namespace {

Json histogram(const std::map<std::uint64_t, std::uint64_t>& counts, std::uint64_t trials) {
  Json rows = Json::array();
  for (const auto& [value, count] : counts) {
    rows.push_back({{"value", value},
                    {"count", count},
                    {"probability", static_cast<double>(count) / static_cast<double>(trials)}});
  }
  return rows;
}

Json summary(const mc::EmpiricalDistribution& d) {
  return {{"mean", d.mean()}, {"median", d.median()}, {"histogram", histogram(d.counts, d.trials)}};
}

void add_histogram_rows(OutputRecord& rec, const mc::EmpiricalDistribution& d) {
  for (const auto& [value, count] : d.counts) {
    rec.rows.push_back({{"statistic", std::string(to_string(d.statistic))},
                        {"k", d.k == 0 ? Json(nullptr) : Json(d.k)},
                        {"value", value},
                        {"count", count},
                        {"probability", d.probability(value)}});
  }
}

Json window_json(const theory::WindowApprox& w) {
  return {{"x", w.x},
          {"target", w.target},
          {"k_upper", w.k_upper},
          {"k_lower", w.k_lower},
          {"alpha", w.alpha},
          {"beta", w.beta},
          {"log_alpha", w.log_alpha},
          {"log_beta", w.log_beta},
          {"probability", w.approx_prob()},
          {"gamma_lo", w.gamma_lo},
          {"gamma_hi", w.gamma_hi},
          {"in_window", w.in_window},
          {"delta", w.delta_fn},
          {"theta", w.theta_fn}};
}

}  // namespace

std::vector<Rank> parse_permutation(const std::vector<std::string>& tokens) {
  std::vector<Rank> values;
  for (const auto& token : tokens) {
    std::string_view rest = token;
    while (!rest.empty()) {
      const auto begin = rest.find_first_not_of(" \t\n,");
      if (begin == std::string_view::npos) break;
      rest.remove_prefix(begin);
      const auto end = std::min(rest.find_first_of(" \t\n,"), rest.size());
      const std::string_view word = rest.substr(0, end);
      Rank v = 0;
      const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
      if (ec != std::errc{} || ptr != word.data() + word.size()) {
        fail(ErrorKind::InvalidInput, "malformed value '" + std::string(word) + "'");
      }
      values.push_back(v);
      rest.remove_prefix(end);
    }
  }
  if (values.empty()) fail(ErrorKind::InvalidInput, "empty input");
  return values;
}

OutputRecord cmd_scan(const std::vector<Rank>& values, const std::vector<std::size_t>& ks) {
  const PermutationSample sample(values);
  const auto v = sample.ranks();
  const std::size_t n = sample.size();
  const std::size_t longest = longest_monotone_block(v);

  OutputRecord rec;
  rec.command = "scan";
  rec.params["n"] = n;
  rec.params["k"] = ks;
  rec.params["permutation"] = values;

  Json runs = Json::array();
  for (const auto& r : maximal_run_profile(v).runs) {
    runs.push_back({{"start", r.start}, {"length", r.length}, {"direction", std::string(to_string(r.direction))}});
  }
  rec.results["n"] = n;
  rec.results["L"] = longest;
  rec.results["runs"] = runs;

  Json blocks = Json::array();
  for (const std::size_t k : ks) {
    const auto windows = count_monotone_windows(v, k);
    Json entry = {{"k", k}, {"M", windows}, {"M_strict", nullptr}, {"strict_blocks", Json::array()}};
    if (k + 1 <= n) {
      entry["M_strict"] = count_strict_blocks(v, k);
      for (const auto& b : strict_block_positions(v, k)) {
        entry["strict_blocks"].push_back({{"start", b.start}, {"direction", std::string(to_string(b.direction))}});
      }
    }
    rec.rows.push_back({{"n", n}, {"k", k}, {"M", entry["M"]}, {"M_strict", entry["M_strict"]}, {"L", longest}});
    blocks.push_back(std::move(entry));
  }
  rec.results["blocks"] = blocks;
  if (ks.empty()) rec.rows.push_back({{"n", n}, {"L", longest}});
  return rec;
}

OutputRecord cmd_exact(const ExactArgs& args) {
  OutputRecord rec;
  rec.command = "exact";
  rec.params["n"] = args.n;
  rec.params["k"] = args.ks;
  rec.params["statistic"] = std::string(to_string(args.statistic));
  rec.params["enum_cap"] = args.enumeration.cap;

  if (args.statistic != Statistic::Longest && args.ks.empty()) {
    fail(ErrorKind::InvalidInput, "--k is required for statistic " + std::string(to_string(args.statistic)));
  }
  const auto tables = exact::enumerate_all(args.n, args.enumeration);

  auto law_json = [&](const exact::ExactPMF& pmf) {
    Json pmf_rows = Json::array();
    for (const auto& [value, weight] : pmf.weights) {
      const auto p = pmf.probability(value);
      pmf_rows.push_back({{"value", value}, {"weight", weight}, {"probability", rational_json(p)}});
      rec.rows.push_back({{"statistic", std::string(to_string(pmf.statistic))},
                          {"n", pmf.n},
                          {"k", pmf.k == 0 ? Json(nullptr) : Json(pmf.k)},
                          {"value", value},
                          {"weight", weight},
                          {"total", pmf.total},
                          {"probability", numerator(p).str() + "/" + denominator(p).str()},
                          {"decimal", exact::to_double(p)}});
    }
    Json j = {{"statistic", std::string(to_string(pmf.statistic))},
              {"k", pmf.k == 0 ? Json(nullptr) : Json(pmf.k)},
              {"total", pmf.total},
              {"pmf", pmf_rows},
              {"mean", rational_json(pmf.mean())}};
    if (pmf.statistic != Statistic::Longest) {
      j["void_weight"] = pmf.weight(0);
      j["void_probability"] = rational_json(pmf.probability(0));
    }
    if (pmf.statistic == Statistic::StrictBlocks) {
      const double lambda = theory::lambda_strict(pmf.n, pmf.k);
      j["lambda"] = rational_json(exact::closed_form_lambda(pmf.n, pmf.k));
      j["tv_to_poisson"] = exact::tv_to_poisson(pmf, lambda);
      j["tv_bound"] = theory::tv_bound_strict(pmf.n, pmf.k);
    }
    return j;
  };

  Json laws = Json::array();
  if (args.statistic == Statistic::Longest) {
    laws.push_back(law_json(tables.law(Statistic::Longest, 0)));
  } else {
    for (const std::size_t k : args.ks) laws.push_back(law_json(tables.law(args.statistic, k)));
  }
  rec.results["n"] = args.n;
  rec.results["permutations"] = tables.total();
  rec.results["laws"] = laws;
  return rec;
}

OutputRecord cmd_bounds(const BoundsArgs& args) {
  OutputRecord rec;
  rec.command = "bounds";
  rec.params["n"] = args.n;
  rec.params["k"] = args.ks;
  rec.params["x"] = args.x ? Json(*args.x) : Json(nullptr);
  rec.params["gamma_mode"] = theory::to_string(args.gamma_mode);
  rec.params["delta"] = args.delta;
  rec.params["theta"] = args.theta;

  if (args.ks.empty() && !args.x) fail(ErrorKind::InvalidInput, "bounds needs --k or --x");
  Json table = Json::array();
  for (const std::uint64_t k : args.ks) {
    const auto tv = theory::tv_bound_terms(args.n, k);
    const auto vp = theory::void_probability_approx(args.n, k);
    const auto naive = theory::naive_terms(args.n, k);
    const double lambda = theory::lambda_strict(args.n, k);
    const double lambda_asym = theory::lambda_asymptotic(args.n, k);
    const double sw = theory::switch_bound(k);
    table.push_back({{"k", k},
                     {"lambda", lambda},
                     {"lambda_asymptotic", lambda_asym},
                     {"tv_bound", {{"local_term", tv.local_term},
                                   {"coarse_term", tv.coarse_term},
                                   {"dependence_term", tv.dependence_term},
                                   {"value", tv.value}}},
                     {"void_probability", {{"approx", vp.approx}, {"error_bound", vp.error_bound}}},
                     {"naive_terms", {{"t1_over_lambda", naive.t1_over_lambda},
                                      {"t2_over_lambda", naive.t2_over_lambda},
                                      {"t3_over_lambda_bound", naive.t3_over_lambda_bound}}},
                     {"switch_bound", sw}});
    rec.rows.push_back({{"n", args.n},
                        {"k", k},
                        {"lambda", lambda},
                        {"lambda_asymptotic", lambda_asym},
                        {"tv_bound", tv.value},
                        {"void_approx", vp.approx},
                        {"void_error_bound", vp.error_bound},
                        {"t1_over_lambda", naive.t1_over_lambda},
                        {"t2_over_lambda", naive.t2_over_lambda},
                        {"t3_over_lambda_bound", naive.t3_over_lambda_bound},
                        {"switch_bound", sw}});
  }
  rec.results["n"] = args.n;
  rec.results["bounds"] = table;
  if (args.x) {
    const auto w = theory::window_probability(static_cast<double>(args.n), *args.x,
                                              theory::parse_schedule(args.delta),
                                              theory::parse_schedule(args.theta), args.gamma_mode);
    rec.results["window"] = window_json(w);
    rec.rows.push_back({{"n", args.n},
                        {"x", w.x},
                        {"window_alpha", w.alpha},
                        {"window_beta", w.beta},
                        {"window_probability", w.approx_prob()},
                        {"in_window", w.in_window}});
  }
  return rec;
}

OutputRecord cmd_simulate(const mc::TrialConfig& config) {
  mc::validate(config);
  OutputRecord rec;
  rec.command = "simulate";
  rec.params["n"] = config.n;
  rec.params["k"] = config.ks;
  rec.params["trials"] = config.trials;
  rec.seed = config.seed;

  const auto result = mc::run_trials(config);
  rec.results["n"] = config.n;
  rec.results["trials"] = config.trials;
  rec.results["L"] = summary(result.longest);
  add_histogram_rows(rec, result.longest);

  Json per_k = Json::array();
  for (const auto& law : result.per_k) {
    const double lambda = theory::lambda_strict(config.n, law.k);
    const auto tv = mc::empirical_tv_to_poisson(law.strict, lambda);
    const auto vp = theory::void_probability_approx(config.n, law.k);
    const auto below = mc::cdf_estimate(result.longest, law.k - 1);
    Json strict = summary(law.strict);
    strict["lambda"] = lambda;
    strict["tv_to_poisson"] = {{"tv", tv.tv}, {"mc_stderr", tv.mc_stderr}};
    strict["tv_bound"] = theory::tv_bound_strict(config.n, law.k);
    Json windows = summary(law.windows);
    windows["void_fraction"] = law.windows.probability(0);
    per_k.push_back({{"k", law.k},
                     {"M", windows},
                     {"M_strict", strict},
                     {"void_probability",
                      {{"empirical", below.p},
                       {"std_error", below.std_error},
                       {"approx", vp.approx},
                       {"error_bound", vp.error_bound}}}});
    add_histogram_rows(rec, law.windows);
    add_histogram_rows(rec, law.strict);
  }
  rec.results["per_k"] = per_k;
  return rec;
}

OutputRecord cmd_converge(const ConvergeArgs& args) {
  convergence::TrajectoryOptions opt;
  if (args.trials) opt.schedule = convergence::TrialSchedule::constant(*args.trials);
  opt.seed = args.seed;
  opt.workers = args.workers;
  opt.x = args.x;
  opt.delta = theory::parse_schedule(args.delta);
  opt.theta = theory::parse_schedule(args.theta);
  opt.gamma_mode = args.gamma_mode;
  opt.coin_baseline = args.coin_baseline;

  OutputRecord rec;
  rec.command = "converge";
  rec.params["grid_min"] = args.grid_min;
  rec.params["grid_max"] = args.grid_max;
  rec.params["grid_rounding"] = "ceil";
  rec.params["trials"] = opt.schedule.describe();
  rec.params["x"] = args.x;
  rec.params["gamma_mode"] = theory::to_string(args.gamma_mode);
  rec.params["delta"] = args.delta;
  rec.params["theta"] = args.theta;
  rec.params["coin_baseline"] = args.coin_baseline;
  rec.seed = args.seed;

  const auto grid = convergence::exp_grid(args.grid_min, args.grid_max);
  const auto points = convergence::trajectory(grid, opt);
  Json out = Json::array();
  for (const auto& p : points) {
    const Json window_prob = p.window ? Json(p.window->approx_prob()) : Json(nullptr);
    const Json coin_mean = p.coin_mean ? Json(*p.coin_mean) : Json(nullptr);
    const Json coin_ratio = p.coin_ratio ? Json(*p.coin_ratio) : Json(nullptr);
    out.push_back({{"n", p.n},
                   {"trials", p.trials},
                   {"seed", p.seed},
                   {"target", p.target},
                   {"mean_L", p.mean_L},
                   {"median_L", p.median_L},
                   {"median_prediction", p.median_prediction},
                   {"ratio", p.ratio},
                   {"window_hit_rate", p.window_hit_rate},
                   {"window", p.window ? window_json(*p.window) : Json(nullptr)},
                   {"coin_mean", coin_mean},
                   {"coin_ratio", coin_ratio},
                   {"L", histogram(p.longest.counts, p.longest.trials)}});
    rec.rows.push_back({{"n", p.n},
                        {"trials", p.trials},
                        {"seed", p.seed},
                        {"target", p.target},
                        {"mean_L", p.mean_L},
                        {"median_L", p.median_L},
                        {"median_prediction", p.median_prediction},
                        {"ratio", p.ratio},
                        {"window_hit_rate", p.window_hit_rate},
                        {"window_probability", window_prob},
                        {"coin_mean", coin_mean},
                        {"coin_ratio", coin_ratio}});
  }
  rec.results["grid"] = grid;
  rec.results["points"] = out;
  return rec;
}

}  // namespace monorun::cli
