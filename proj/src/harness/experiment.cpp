#include "rtss/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rtss/domains/airspace.hpp"
#include "rtss/domains/racetrack.hpp"
#include "rtss/domains/splitmix64.hpp"

namespace rtss::harness {

namespace {

constexpr std::string_view kOfflineAStar = "offline-astar";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

bool is_rtfs(const std::string& algorithm) { return algorithm == "rtfs"; }

}  // namespace

ExperimentConfig ExperimentConfig::from_json(std::string_view text, const std::string& base_dir) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig c;
  c.domain = j.value("domain", c.domain);
  if (j.contains("airspace")) {
    const auto& a = j.at("airspace");
    c.length = a.value("length", c.length);
    c.max_altitude = a.value("maxAltitude", c.max_altitude);
    c.p_obs = a.value("pObs", c.p_obs);
  }
  if (j.contains("racetrack")) c.track = j.at("racetrack").value("track", c.track);
  c.algorithms = j.value("algorithms", c.algorithms);
  c.bounds = j.value("bounds", c.bounds);
  c.ratios = j.value("ratios", c.ratios);
  c.evaluators = j.value("evaluators", c.evaluators);
  c.repetitions = j.value("repetitions", c.repetitions);
  c.seed = j.value("seed", c.seed);
  c.cache_enabled = j.value("cacheEnabled", c.cache_enabled);
  c.carryover = j.value("carryover", c.carryover);
  c.commit_mode = j.value("commitMode", c.commit_mode);
  c.initial_proof_budget = j.value("initialProofBudget", c.initial_proof_budget);
  c.max_iterations = j.value("maxIterations", c.max_iterations);
  c.audit = j.value("audit", c.audit);
  if (j.contains("output")) {
    c.csv_out = j.at("output").value("csv", c.csv_out);
    c.svg_out = j.at("output").value("svg", c.svg_out);
  }
  const std::filesystem::path base(base_dir);
  auto resolve = [&](std::string& p) {
    if (!p.empty() && std::filesystem::path(p).is_relative()) p = (base / p).lexically_normal().string();
  };
  resolve(c.track);
  resolve(c.csv_out);
  resolve(c.svg_out);
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  if (domain != "airspace" && domain != "racetrack") throw std::invalid_argument("unknown domain: " + domain);
  if (algorithms.empty() || bounds.empty() || ratios.empty() || evaluators.empty()) {
    throw std::invalid_argument("experiment grids must not be empty");
  }
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  for (const std::string& a : algorithms) {
    if (a != kOfflineAStar) parse_algorithm(a);
  }
  for (const std::string& e : evaluators) NodeEvaluator::parse(e);
  if (commit_mode != "single" && commit_mode != "path") throw std::invalid_argument("commitMode is single or path");
  if (max_iterations < 1) throw std::invalid_argument("maxIterations must be >= 1");
  PlannerConfig probe;
  probe.initial_proof_budget = initial_proof_budget;
  for (std::int64_t b : bounds) {
    probe.iteration_bound = b;
    for (double r : ratios) {
      probe.exploration_ratio = r;
      probe.validate();
    }
  }
  if (domain == "airspace") {
    domains::AirspaceInstance::generate(length, max_altitude, p_obs, 0);
  } else if (!std::filesystem::exists(track)) {
    throw std::invalid_argument("racetrack file does not exist: " + track);
  }
}

namespace {

domains::Cell shuffled_start(const domains::RacetrackInstance& track, std::uint64_t seed, int rep) {
  std::vector<domains::Cell> starts = track.starts();
  if (starts.empty()) starts = track.free_cells();
  if (starts.empty()) throw std::invalid_argument("racetrack has no start cell");
  // one shuffle per configuration seed, walked by repetition
  domains::SplitMix64 rng(seed);
  for (std::size_t i = starts.size() - 1; i > 0; --i) {
    std::swap(starts[i], starts[static_cast<std::size_t>(rng.next_below(i + 1))]);
  }
  return starts[static_cast<std::size_t>(rep) % starts.size()];
}

std::string track_id(const std::string& path, domains::Cell s) {
  return std::filesystem::path(path).stem().string() + "@" + std::to_string(s.x) + "-" + std::to_string(s.y);
}

}  // namespace

InstanceCase prepare_instance(const ExperimentConfig& config, int rep) {
  InstanceCase c;
  c.seed = domains::splitmix64_hash(config.seed ^ static_cast<std::uint64_t>(rep));
  if (config.domain == "airspace") {
    auto domain = std::make_shared<domains::AirspaceDomain>(
        domains::AirspaceInstance::generate(config.length, config.max_altitude, config.p_obs, c.seed));
    c.start = domain->start();
    char id[128];
    std::snprintf(id, sizeof id, "airspace-L%d-A%d-p%s-s%llu", config.length, config.max_altitude,
                  format_number(config.p_obs).c_str(), static_cast<unsigned long long>(c.seed));
    c.id = id;
    c.domain = std::move(domain);
  } else {
    auto domain = std::make_shared<domains::RacetrackDomain>(domains::RacetrackInstance::parse(read_file(config.track)));
    const domains::Cell s = shuffled_start(domain->instance(), config.seed, rep);
    c.start = domain->start_at(s);
    c.seed = static_cast<std::uint64_t>(rep);
    c.id = track_id(config.track, s);
    c.domain = std::move(domain);
  }
  const bool needs_truth =
      config.audit || std::find(config.algorithms.begin(), config.algorithms.end(), "safe-lss-lrta") !=
                          config.algorithms.end();
  if (needs_truth) {
    c.truth = std::make_shared<domains::GroundTruth>(domains::true_safe_set(*c.domain, {c.start}));
  }
  return c;
}

InstanceCase load_instance(const std::string& path, std::uint64_t seed, bool with_truth) {
  const std::string text = read_file(path);
  InstanceCase c;
  c.seed = seed;
  if (text.starts_with("airspace v1")) {
    auto domain = std::make_shared<domains::AirspaceDomain>(domains::AirspaceInstance::parse(text));
    c.start = domain->start();
    c.id = std::filesystem::path(path).stem().string();
    c.domain = std::move(domain);
  } else if (text.starts_with("racetrack v1")) {
    auto domain = std::make_shared<domains::RacetrackDomain>(domains::RacetrackInstance::parse(text));
    const domains::Cell s = shuffled_start(domain->instance(), seed, 0);
    c.start = domain->start_at(s);
    c.id = track_id(path, s);
    c.domain = std::move(domain);
  } else {
    throw std::invalid_argument(path + " is neither an airspace v1 nor a racetrack v1 file");
  }
  if (with_truth) c.truth = std::make_shared<domains::GroundTruth>(domains::true_safe_set(*c.domain, {c.start}));
  return c;
}

std::vector<RunSpec> expand_grid(const ExperimentConfig& config) {
  std::vector<RunSpec> grid;
  PlannerConfig base;
  base.cache_enabled = config.cache_enabled;
  base.allow_budget_carryover = config.carryover;
  base.commit_mode = config.commit_mode == "path" ? CommitMode::kFullPath : CommitMode::kSingleAction;
  base.initial_proof_budget = config.initial_proof_budget;
  for (int rep = 0; rep < config.repetitions; ++rep) {
    for (const std::string& algorithm : config.algorithms) {
      for (std::int64_t bound : config.bounds) {
        RunSpec spec;
        spec.instance = static_cast<std::size_t>(rep);
        spec.algorithm = algorithm;
        spec.planner = base;
        spec.planner.iteration_bound = bound;
        if (algorithm != kOfflineAStar) spec.planner.algorithm = parse_algorithm(algorithm);
        if (!is_rtfs(algorithm)) {
          spec.run_index = grid.size();
          grid.push_back(spec);
          continue;
        }
        for (double ratio : config.ratios) {
          for (const std::string& evaluator : config.evaluators) {
            spec.planner.exploration_ratio = ratio;
            spec.planner.evaluator = NodeEvaluator::parse(evaluator);
            spec.run_index = grid.size();
            grid.push_back(spec);
          }
        }
      }
    }
  }
  return grid;
}

RunRecord run_one(const RunSpec& spec, const InstanceCase& instance, const ExperimentConfig& config) {
  RunRecord rec;
  try {
    if (spec.algorithm == kOfflineAStar) {
      rec = offline_astar_episode(*instance.domain, instance.start).record;
    } else {
      EpisodeOptions options;
      options.max_iterations = config.max_iterations;
      options.truth = instance.truth.get();
      rec = simulate_episode(spec.planner, *instance.domain, instance.start, options).record;
    }
  } catch (const std::exception&) {
    rec = RunRecord{};
    rec.algorithm = spec.algorithm;
    rec.outcome = Outcome::kError;
    rec.exploration_ratio = std::nan("");
    rec.mean_target_open_rank = std::nan("");
    rec.evaluator = spec.planner.evaluator.name();
  }
  rec.instance_id = instance.id;
  rec.seed = instance.seed;
  rec.iteration_bound = spec.planner.iteration_bound;
  return rec;
}

std::vector<RunRecord> run_grid_serial(const ExperimentConfig& config) {
  config.validate();
  std::vector<InstanceCase> instances;
  for (int rep = 0; rep < config.repetitions; ++rep) instances.push_back(prepare_instance(config, rep));
  std::vector<RunRecord> records;
  for (const RunSpec& spec : expand_grid(config)) records.push_back(run_one(spec, instances[spec.instance], config));
  return records;
}

std::vector<RunRecord> run_grid(const ExperimentConfig& config, int jobs) {
  if (jobs <= 1) return run_grid_serial(config);
  config.validate();
  std::vector<InstanceCase> instances(static_cast<std::size_t>(config.repetitions));
  const std::vector<RunSpec> grid = expand_grid(config);
  std::vector<RunRecord> records(grid.size());
  std::string failure;
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 1)
  for (int rep = 0; rep < config.repetitions; ++rep) {
    try {
      instances[static_cast<std::size_t>(rep)] = prepare_instance(config, rep);
    } catch (const std::exception& e) {
#pragma omp critical
      failure = e.what();
    }
  }
  if (!failure.empty()) throw std::runtime_error(failure);
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 1)
  for (std::size_t i = 0; i < grid.size(); ++i) {
    records[i] = run_one(grid[i], instances[grid[i].instance], config);
  }
  return records;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string csv_row(const RunRecord& r) {
  std::string row;
  auto field = [&](const std::string& s) {
    if (!row.empty()) row += ',';
    row += s;
  };
  field(r.instance_id);
  field(r.algorithm);
  field(std::to_string(r.iteration_bound));
  field(format_number(r.exploration_ratio));
  field(r.evaluator);
  field(std::to_string(r.seed));
  field(std::string(to_string(r.outcome)));
  field(format_number(r.gat));
  field(format_number(r.velocity));
  field(std::to_string(r.total_expansions));
  field(std::to_string(r.proof_expansions));
  field(format_number(r.dead_end_reexpansion_ratio));
  field(format_number(r.mean_target_open_rank));
  field(std::to_string(r.iterations));
  return row;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << '\n';
  for (const RunRecord& r : records) out << csv_row(r) << '\n';
}

std::string to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

std::string stats_to_csv(const std::vector<domains::AltitudeStats>& rows) {
  std::string out(kStatsCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.altitude) + ',' + std::to_string(r.samples) + ',' + std::to_string(r.proven) + ',' +
           format_number(r.safety_probability) + ',' + format_number(r.mean_proof_transitions) + ',' +
           format_number(r.mean_proof_states) + ',' + format_number(r.mean_success_expansions) + ',' +
           format_number(r.mean_failed_expansions) + '\n';
  }
  return out;
}

}  // namespace rtss::harness
