#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rtss/core/best_first.hpp"
#include "rtss/core/domain.hpp"
#include "rtss/core/node_evaluator.hpp"
#include "rtss/core/search_graph.hpp"
#include "rtss/safety/dead_end_cache.hpp"
#include "rtss/safety/safety.hpp"

namespace rtss {

enum class Algorithm : std::uint8_t {
  kLssLrta,
  kSafeRts,
  kRtfs,
  /// LSS-LRTA* that never generates true dead-ends (needs a ground-truth cache).
  kSafeLssLrta,
};

std::string_view to_string(Algorithm algorithm);

/// Accepts `lss-lrta`, `safe-rts`, `rtfs`, `safe-lss-lrta`. Throws std::invalid_argument.
Algorithm parse_algorithm(std::string_view text);

enum class CommitMode : std::uint8_t { kSingleAction, kFullPath };

struct PlannerConfig {
  Algorithm algorithm = Algorithm::kLssLrta;
  std::int64_t iteration_bound = 100;
  /// Share of the RTFS bound spent exploring; must lie in (0, 1).
  double exploration_ratio = 0.5;
  /// Exploration order for RTFS; the other planners always use FCost.
  NodeEvaluator evaluator = NodeEvaluator::f_cost();
  CommitMode commit_mode = CommitMode::kSingleAction;
  /// RTFS: unused expansions raise the next iteration's bound. When off, they
  /// are spent in the same iteration, split by the exploration ratio.
  bool allow_budget_carryover = true;
  /// SafeRTS: starting proof/exploration slice, doubled after each failed proof.
  std::int64_t initial_proof_budget = 10;
  bool cache_enabled = true;

  /// Throws std::invalid_argument on a bound < 1, a ratio outside (0, 1), or
  /// an initial proof budget < 1.
  void validate() const;
};

enum class IterationStatus : std::uint8_t {
  kMoved,
  /// The committed actions end at a goal.
  kGoalCommitted,
  /// No safe target and no identity action.
  kTerminated,
  /// Open list ran empty without a goal.
  kFailure,
};

struct IterationReport {
  IterationStatus status = IterationStatus::kMoved;
  std::int64_t budget = 0;  // expansions allowed this iteration
  std::int64_t expansions_goal = 0;
  std::int64_t expansions_proof = 0;
  int proofs_attempted = 0;
  int proofs_succeeded = 0;
  int proofs_exhausted = 0;
  int proofs_budget_out = 0;
  std::vector<ActionId> committed_actions;
  /// States the planner expects to pass through, one per committed action.
  std::vector<StateKey> committed_states;
  /// 1-based FCost rank of the frontier node that determined the target.
  std::optional<int> target_open_rank;
  bool identity_action_taken = false;
  std::int64_t unused_budget = 0;

  std::int64_t expansions() const { return expansions_goal + expansions_proof; }
};

/// Safe-toward-best choice.
struct TargetChoice {
  NodeId target = kNoNode;
  NodeId frontier = kNoNode;
  int rank = 0;
};

/// Scans open in FCost order; the first node with a safe node on its path from
/// the root (the root itself excluded, the node itself included) decides. The
/// target is the deepest such safe node and the rank is the position of the
/// frontier node, counting from 1.
std::optional<TargetChoice> safe_toward_best(const SearchGraph& graph);

/// RTFS-0 proof allocation: prove the FCost-best open node; on Exhausted cache
/// the dead-ends, propagate them (which drops the node from open) and move to
/// the next best; stop on Proven, BudgetOut or an empty open list.
std::vector<ProofResult> allocate_proofs_rtfs0(SearchGraph& graph, ExpansionBudget& budget,
                                               const Domain& domain, DeadEndCache& cache,
                                               SearchCounters* counters = nullptr);

struct RtfsStrategies {
  using Allocate = std::function<std::vector<ProofResult>(SearchGraph&, ExpansionBudget&, const Domain&,
                                                          DeadEndCache&, SearchCounters*)>;
  using SelectTarget = std::function<std::optional<TargetChoice>(const SearchGraph&)>;

  Allocate allocate = allocate_proofs_rtfs0;
  SelectTarget select_target = safe_toward_best;
};

/// One LSS-LRTA* iteration from `root`. `filter`, when given, hides the states
/// it blocks; the ground-truth oracle planner passes its dead-end set here.
IterationReport lss_lrta_iteration(SearchGraph& graph, StateKey root, const PlannerConfig& config,
                                   const Domain& domain, const DeadEndCache* filter = nullptr,
                                   SearchCounters* counters = nullptr);

/// LSS-LRTA* with an ideal dead-end detector: `truth` flags exactly the true
/// dead-ends and must be enabled.
IterationReport safe_lss_lrta_iteration(SearchGraph& graph, StateKey root, const PlannerConfig& config,
                                        const Domain& domain, const DeadEndCache& truth,
                                        SearchCounters* counters = nullptr);

/// One SafeRTS iteration: alternating slices of FCost exploration and a
/// d_safe-ordered proof of the current best open node, sharing one bound.
IterationReport safe_rts_iteration(SearchGraph& graph, StateKey root, const PlannerConfig& config,
                                   const Domain& domain, DeadEndCache& cache,
                                   SearchCounters* counters = nullptr);

/// One RTFS iteration with `bound` expansions (the configured bound plus any
/// carryover): explore, allocate proofs, propagate h, dead-ends and safety,
/// select the target.
IterationReport rtfs_iteration(SearchGraph& graph, StateKey root, const PlannerConfig& config,
                               std::int64_t bound, const Domain& domain, DeadEndCache& cache,
                               const RtfsStrategies& strategies = {}, SearchCounters* counters = nullptr);

struct Plan {
  std::vector<ActionId> actions;
  std::vector<StateKey> states;  // start first
  Cost cost = 0.0;
};

/// Complete A* from `start`; absent when no goal is reachable.
std::optional<Plan> offline_astar(const Domain& domain, StateKey start);

/// Episode-lifetime planner state: the search graph (learned h, safety),
/// the dead-end cache and the RTFS carryover.
class PlannerSession {
 public:
  PlannerSession(PlannerConfig config, const Domain& domain);

  /// For the oracle planner: the cache of true dead-ends.
  PlannerSession(PlannerConfig config, const Domain& domain, DeadEndCache truth);

  IterationReport step(StateKey agent);

  const PlannerConfig& config() const { return config_; }
  const SearchGraph& graph() const { return graph_; }
  const DeadEndCache& cache() const { return cache_; }
  const SearchCounters& counters() const { return counters_; }
  SearchCounters& counters() { return counters_; }

 private:
  PlannerConfig config_;
  const Domain* domain_;
  SearchGraph graph_;
  DeadEndCache cache_;
  SearchCounters counters_;
  std::int64_t carryover_ = 0;
  RtfsStrategies strategies_;
};

}  // namespace rtss
