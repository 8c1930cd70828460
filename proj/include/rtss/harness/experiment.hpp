#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rtss/core/domain.hpp"
#include "rtss/domains/airspace_stats.hpp"
#include "rtss/domains/ground_truth.hpp"
#include "rtss/harness/episode.hpp"

namespace rtss::harness {

/// A run grid: instances x algorithms x bounds (x ratios x evaluators for
/// RTFS). The JSON schema is documented in docs/experiment-config.md.
struct ExperimentConfig {
  std::string domain = "airspace";  // or "racetrack"
  int length = 2000;
  int max_altitude = 20;
  double p_obs = 0.05;
  std::string track;  // racetrack map file

  /// Planner names (see parse_algorithm) and `offline-astar`.
  std::vector<std::string> algorithms{"safe-rts", "rtfs"};
  std::vector<std::int64_t> bounds{30, 100, 300};
  std::vector<double> ratios{0.5};
  std::vector<std::string> evaluators{"astar"};
  int repetitions = 10;
  std::uint64_t seed = 1;
  bool cache_enabled = true;
  bool carryover = true;
  std::string commit_mode = "single";  // or "path"
  std::int64_t initial_proof_budget = 10;
  std::int64_t max_iterations = 100'000;
  /// Check every visited state against the brute-force safe set.
  bool audit = true;

  std::string csv_out;
  std::string svg_out;

  /// Throws std::invalid_argument (bad value) or nlohmann::json exceptions
  /// (bad type). Relative paths are resolved against `base_dir`.
  static ExperimentConfig from_json(std::string_view text, const std::string& base_dir = ".");

  /// Throws std::invalid_argument on empty grids, unknown names, a ratio
  /// outside (0, 1), or a missing track file.
  void validate() const;
};

/// One prepared world: the domain, its start state and (when audited) the
/// forward-reachable ground truth.
struct InstanceCase {
  std::string id;
  std::uint64_t seed = 0;
  std::shared_ptr<const Domain> domain;
  StateKey start;
  std::shared_ptr<const domains::GroundTruth> truth;
};

struct RunSpec {
  std::size_t run_index = 0;
  std::size_t instance = 0;  // index into the prepared instances
  std::string algorithm;
  PlannerConfig planner;
};

/// Instance for repetition `rep`: Airspace instances are generated from
/// SplitMix64(seed ^ rep); racetrack repetitions walk a seeded shuffle of the
/// map's start cells.
InstanceCase prepare_instance(const ExperimentConfig& config, int rep);

/// Loads an `airspace v1` or `racetrack v1` file. Airspace episodes start at
/// (0, 0); racetrack episodes at the first cell of the start shuffle for
/// `seed`. Throws std::invalid_argument on an unreadable or unknown file.
InstanceCase load_instance(const std::string& path, std::uint64_t seed, bool with_truth);

/// The grid in runIndex order.
std::vector<RunSpec> expand_grid(const ExperimentConfig& config);

/// Runs one grid cell. Errors become rows with outcome Error.
RunRecord run_one(const RunSpec& spec, const InstanceCase& instance, const ExperimentConfig& config);

/// Reference runner, one thread.
std::vector<RunRecord> run_grid_serial(const ExperimentConfig& config);

/// OpenMP runner; `jobs` <= 1 falls back to the serial runner. Rows come back
/// in runIndex order and equal the serial rows exactly.
std::vector<RunRecord> run_grid(const ExperimentConfig& config, int jobs);

inline constexpr std::string_view kCsvHeader =
    "instanceId,algorithm,iterationBound,explorationRatio,evaluator,seed,outcome,gat,velocity,"
    "totalExpansions,proofExpansions,deadEndReexpansionRatio,meanTargetOpenRank,iterations";

/// Locale-independent number formatting used in every CSV cell.
std::string format_number(double value);

std::string csv_row(const RunRecord& record);
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::string to_csv(const std::vector<RunRecord>& records);

inline constexpr std::string_view kStatsCsvHeader =
    "altitude,samples,proven,safetyProbability,meanProofLength,meanProofStates,"
    "meanSuccessfulProofExpansions,meanFailedProofExpansions";

/// meanProofLength counts transitions, meanProofStates counts path states.
std::string stats_to_csv(const std::vector<domains::AltitudeStats>& rows);

}  // namespace rtss::harness
