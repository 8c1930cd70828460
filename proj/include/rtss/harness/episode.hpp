#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rtss/core/domain.hpp"
#include "rtss/domains/ground_truth.hpp"
#include "rtss/planners/planners.hpp"

namespace rtss::harness {

enum class Outcome : std::uint8_t {
  kGoalReached,
  kDeadEndEntered,
  kTerminated,
  kFailure,
  kMaxIterationsExceeded,
  kError,
};

std::string_view to_string(Outcome outcome);

/// One episode, flattened for CSV output.
struct RunRecord {
  std::string instance_id;
  std::string algorithm;
  std::int64_t iteration_bound = 0;
  /// NaN when the algorithm has no exploration ratio.
  double exploration_ratio = 0.0;
  std::string evaluator;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::kError;
  /// Committed actions times the action duration (one per action).
  double gat = 0.0;
  /// Distance travelled divided by GAT; 0 when nothing was committed.
  double velocity = 0.0;
  std::int64_t total_expansions = 0;
  std::int64_t proof_expansions = 0;
  double dead_end_reexpansion_ratio = 0.0;
  /// NaN when no iteration chose a frontier-based target.
  double mean_target_open_rank = 0.0;
  std::int64_t iterations = 0;
};

struct EpisodeOptions {
  std::int64_t max_iterations = 100'000;
  /// When set, every visited state is checked against the true safe set.
  /// Without it only terminal non-goal states count as dead-end entries.
  const domains::GroundTruth* truth = nullptr;
  /// Keep the per-iteration reports in the result.
  bool keep_reports = false;
};

struct EpisodeResult {
  RunRecord record;
  std::vector<ActionId> actions;
  /// Visited states, start first.
  std::vector<StateKey> trajectory;
  std::vector<IterationReport> reports;
  std::optional<StateKey> dead_end;
  std::int64_t dead_end_entries = 0;
  std::int64_t avoided_reexpansions = 0;
  std::int64_t dead_end_reexpansions = 0;
};

/// Runs `session` from `start`, applying every committed action with the
/// ground-truth dynamics. Planner exceptions propagate.
EpisodeResult simulate_episode(PlannerSession& session, const Domain& domain, StateKey start,
                               const EpisodeOptions& options = {});

/// Convenience: builds the session (the oracle planner takes its dead-end set
/// from options.truth, which is then required).
EpisodeResult simulate_episode(const PlannerConfig& config, const Domain& domain, StateKey start,
                               const EpisodeOptions& options = {});

/// Offline A* packaged as a record: GAT is the optimal plan length.
EpisodeResult offline_astar_episode(const Domain& domain, StateKey start);

/// Share of expansions spent on states an exhausted proof had already shown
/// to be dead-ends. Requires `config.cache_enabled == false`.
double measure_reexpansion_ratio(const PlannerConfig& config, const Domain& domain, StateKey start,
                                 const EpisodeOptions& options = {});

/// Replays `actions` from `start`: true iff every step is valid, no visited
/// state is a dead-end (terminal non-goal or, with `truth`, outside the safe
/// set) and the last state is a goal.
bool audit_replay(const Domain& domain, StateKey start, const std::vector<ActionId>& actions,
                  const domains::GroundTruth* truth = nullptr);

}  // namespace rtss::harness
