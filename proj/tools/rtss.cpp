// rtss: generate instances, run planners and experiment grids, sample proof
// statistics, run the property suites and draw plots.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rtss/domains/airspace.hpp"
#include "rtss/domains/airspace_stats.hpp"
#include "rtss/harness/episode.hpp"
#include "rtss/harness/experiment.hpp"
#include "rtss/harness/plot.hpp"
#include "rtss/verify/suites.hpp"

#ifndef RTSS_DATA_DIR
#define RTSS_DATA_DIR "data"
#endif

namespace {

constexpr int kOk = 0;
constexpr int kPlannerFailure = 1;
constexpr int kUsage = 2;
constexpr int kVerifyFailure = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RTSS_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("RTSS_SEED is not an unsigned integer: ") + env);
  }
  return 1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

bool planner_failed(rtss::harness::Outcome o) {
  using rtss::harness::Outcome;
  return o == Outcome::kFailure || o == Outcome::kTerminated || o == Outcome::kError;
}

struct GenerateArgs {
  std::string domain = "airspace";
  int length = 2000;
  int max_altitude = 20;
  double p_obs = 0.05;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  if (a.domain != "airspace") throw UsageError("only airspace instances are generated; racetracks are map files");
  const auto inst = rtss::domains::AirspaceInstance::generate(a.length, a.max_altitude, a.p_obs,
                                                              a.seed.value_or(default_seed()));
  emit(a.out, inst.serialize());
  return kOk;
}

struct RunArgs {
  std::string config;
  std::string out;
  int jobs = 1;
  std::string domain;
  std::string algorithm;
  std::int64_t bound = 100;
  double ratio = 0.5;
  std::string evaluator = "astar";
  std::optional<std::uint64_t> seed;
  bool no_cache = false;
  bool no_carryover = false;
  std::string commit = "single";
  std::int64_t max_iterations = 100'000;
};

int cmd_run_config(const RunArgs& a) {
  namespace fs = std::filesystem;
  const std::string text = slurp(a.config);
  rtss::harness::ExperimentConfig config;
  try {
    config = rtss::harness::ExperimentConfig::from_json(text, fs::path(a.config).parent_path().string());
    config.validate();
  } catch (const std::exception& e) {
    throw UsageError(a.config + ": " + e.what());
  }
  const auto records = rtss::harness::run_grid(config, a.jobs);
  const std::string csv = rtss::harness::to_csv(records);
  emit(a.out.empty() ? config.csv_out : a.out, csv);
  if (!config.svg_out.empty()) {
    rtss::harness::PlotSpec spec{"iterationBound", "velocity", "algorithm", fs::path(a.config).stem().string()};
    emit(config.svg_out, rtss::harness::emit_plot(rtss::harness::parse_csv(csv), spec));
  }
  for (const auto& r : records) {
    if (planner_failed(r.outcome)) return kPlannerFailure;
  }
  return kOk;
}

int cmd_run_adhoc(const RunArgs& a) {
  rtss::PlannerConfig config;
  rtss::harness::InstanceCase instance;
  try {
    config.algorithm = rtss::parse_algorithm(a.algorithm);
    config.iteration_bound = a.bound;
    config.exploration_ratio = a.ratio;
    config.evaluator = rtss::NodeEvaluator::parse(a.evaluator);
    config.cache_enabled = !a.no_cache;
    config.allow_budget_carryover = !a.no_carryover;
    config.commit_mode = a.commit == "path" ? rtss::CommitMode::kFullPath : rtss::CommitMode::kSingleAction;
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  try {
    instance = rtss::harness::load_instance(a.domain, a.seed.value_or(default_seed()),
                                            config.algorithm == rtss::Algorithm::kSafeLssLrta);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  rtss::harness::EpisodeOptions options;
  options.max_iterations = a.max_iterations;
  options.truth = instance.truth.get();
  auto result = rtss::harness::simulate_episode(config, *instance.domain, instance.start, options);
  result.record.instance_id = instance.id;
  result.record.seed = instance.seed;
  emit(a.out, std::string(rtss::harness::kCsvHeader) + "\n" + rtss::harness::csv_row(result.record) + "\n");
  return result.record.outcome == rtss::harness::Outcome::kGoalReached ? kOk : kPlannerFailure;
}

struct StatsArgs {
  std::string instance;
  int samples = 1000;
  std::int64_t proof_budget = 0;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string out;
};

int cmd_stats(const StatsArgs& a) {
  std::optional<rtss::domains::AirspaceDomain> domain;
  try {
    domain.emplace(rtss::domains::AirspaceInstance::parse(slurp(a.instance)));
  } catch (const std::invalid_argument& e) {
    throw UsageError(a.instance + ": " + e.what());
  }
  rtss::domains::StatsOptions options;
  options.samples_per_altitude = a.samples;
  options.proof_budget = a.proof_budget;
  options.seed = a.seed.value_or(default_seed());
  const auto rows = a.jobs > 1 ? rtss::domains::airspace_stats(*domain, options)
                               : rtss::domains::airspace_stats_serial(*domain, options);
  emit(a.out, rtss::harness::stats_to_csv(rows));
  return kOk;
}

struct VerifyArgs {
  std::string suite = "all";
  int seeds = 100;
  std::optional<std::uint64_t> seed;
  std::string data_dir = RTSS_DATA_DIR;
};

int cmd_verify(const VerifyArgs& a) {
  rtss::verify::SuiteOptions options;
  options.seeds = a.seeds;
  options.base_seed = a.seed.value_or(default_seed());
  options.data_dir = a.data_dir;
  std::vector<rtss::verify::CheckResult> results;
  if (a.suite == "theorems" || a.suite == "all") {
    auto r = rtss::verify::run_theorem_suite(options);
    results.insert(results.end(), r.begin(), r.end());
  }
  if (a.suite == "oracles" || a.suite == "all") {
    auto r = rtss::verify::run_oracle_suite(options);
    results.insert(results.end(), r.begin(), r.end());
  }
  for (const auto& r : results) {
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, " << r.failures
              << " failures)";
    if (!r.detail.empty()) std::cout << ": " << r.detail;
    std::cout << "\n";
  }
  return rtss::verify::all_passed(results) ? kOk : kVerifyFailure;
}

struct PlotArgs {
  std::string csv;
  rtss::harness::PlotSpec spec;
  std::string out;
};

int cmd_plot(const PlotArgs& a) {
  std::string svg;
  try {
    svg = rtss::harness::emit_plot(rtss::harness::parse_csv(slurp(a.csv)), a.spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(a.out, svg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safe real-time search: planners, experiments and checks"};
  app.require_subcommand(1, 1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a seeded Airspace instance file");
  generate->add_option("--domain", gen.domain, "Domain to generate")->check(CLI::IsMember({"airspace", "racetrack"}));
  generate->add_option("--length", gen.length, "Horizontal cells")->check(CLI::PositiveNumber);
  generate->add_option("--max-altitude", gen.max_altitude, "Highest altitude")->check(CLI::Range(2, 1000));
  generate->add_option("--p-obs", gen.p_obs, "Obstacle probability per cell")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--seed", gen.seed, "Generator seed (default $RTSS_SEED or 1)");
  generate->add_option("--out", gen.out, "Output file (stdout if omitted)");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment grid or one episode");
  auto* config_opt = run_cmd->add_option("--config", run.config, "Experiment JSON")->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out, "CSV output (stdout if omitted)");
  run_cmd->add_option("--jobs", run.jobs, "Parallel grid cells")->check(CLI::PositiveNumber);
  auto* domain_opt = run_cmd->add_option("--domain", run.domain, "Instance file (airspace v1 or racetrack v1)")
                         ->check(CLI::ExistingFile);
  auto* algo_opt = run_cmd->add_option("--algorithm", run.algorithm, "lss-lrta, safe-rts, rtfs or safe-lss-lrta");
  run_cmd->add_option("--bound", run.bound, "Expansions per iteration");
  run_cmd->add_option("--ratio", run.ratio, "RTFS exploration ratio, in (0, 1)");
  run_cmd->add_option("--evaluator", run.evaluator, "astar, wastar:W, greedy or dsafe");
  run_cmd->add_option("--seed", run.seed, "Start selection seed (default $RTSS_SEED or 1)");
  run_cmd->add_flag("--no-cache", run.no_cache, "Do not prune cached dead-ends");
  run_cmd->add_flag("--no-carryover", run.no_carryover, "RTFS: spend leftovers in the same iteration");
  run_cmd->add_option("--commit", run.commit, "single or path")->check(CLI::IsMember({"single", "path"}));
  run_cmd->add_option("--max-iterations", run.max_iterations, "Episode iteration cap")->check(CLI::PositiveNumber);
  config_opt->excludes(domain_opt)->excludes(algo_opt);
  domain_opt->needs(algo_opt);
  algo_opt->needs(domain_opt);

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "Per-altitude safety proof statistics of an Airspace instance");
  stats->add_option("--instance", st.instance, "Airspace instance file")->required()->check(CLI::ExistingFile);
  stats->add_option("--samples", st.samples, "Samples per altitude")->check(CLI::PositiveNumber);
  stats->add_option("--proof-budget", st.proof_budget, "Expansions per proof, 0 for unlimited");
  stats->add_option("--seed", st.seed, "Sampling seed (default $RTSS_SEED or 1)");
  stats->add_option("--jobs", st.jobs, "Use the OpenMP sampler when > 1")->check(CLI::PositiveNumber);
  stats->add_option("--out", st.out, "CSV output (stdout if omitted)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Brute-force property suites");
  verify->add_option("--suite", ver.suite, "theorems, oracles or all")
      ->check(CLI::IsMember({"theorems", "oracles", "all"}));
  verify->add_option("--seeds", ver.seeds, "Number of seeded instances")->check(CLI::PositiveNumber);
  verify->add_option("--seed", ver.seed, "Base seed (default $RTSS_SEED or 1)");
  verify->add_option("--data-dir", ver.data_dir, "Directory holding golden/ and tracks/");

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot", "SVG line plot with 95% confidence bands from a run CSV");
  plot->add_option("--csv", pl.csv, "Run CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--x", pl.spec.x, "X column")->required();
  plot->add_option("--y", pl.spec.y, "Y column")->required();
  plot->add_option("--series", pl.spec.series, "Series column")->required();
  plot->add_option("--title", pl.spec.title, "Plot title");
  plot->add_option("--out", pl.out, "SVG output (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*run_cmd) {
      if (!run.config.empty()) return cmd_run_config(run);
      if (run.domain.empty()) throw UsageError("run needs --config or --domain with --algorithm");
      return cmd_run_adhoc(run);
    }
    if (*stats) return cmd_stats(st);
    if (*verify) return cmd_verify(ver);
    if (*plot) return cmd_plot(pl);
  } catch (const UsageError& e) {
    std::cerr << "rtss: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "rtss: " << e.what() << "\n";
    return kPlannerFailure;
  }
  return kUsage;
}
