#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "rtss/core/domain.hpp"
#include "rtss/core/node_evaluator.hpp"
#include "rtss/core/search_graph.hpp"
#include "rtss/safety/dead_end_cache.hpp"

namespace rtss {

/// Expansion allowance. One expansion is one removal from an open list followed
/// by successor generation; used never exceeds limit.
struct ExpansionBudget {
  std::int64_t limit = 0;
  std::int64_t used = 0;

  static ExpansionBudget unlimited() { return {std::numeric_limits<std::int64_t>::max(), 0}; }

  std::int64_t remaining() const { return limit - used; }
  bool exhausted() const { return used >= limit; }
};

/// Instrumentation shared by goal and proof search.
struct SearchCounters {
  std::int64_t expansions = 0;
  /// Expansions of states already flagged as dead-ends.
  std::int64_t dead_end_reexpansions = 0;
  /// Generations refused because the state was flagged.
  std::int64_t avoided_reexpansions = 0;
  /// When set, every expanded state is appended in order.
  std::vector<StateKey>* expansion_log = nullptr;

  void record_expansion(StateKey state, const DeadEndCache* cache) {
    ++expansions;
    if (cache != nullptr && cache->contains(state)) ++dead_end_reexpansions;
    if (expansion_log != nullptr) expansion_log->push_back(state);
  }
};

enum class ExpansionStatus : std::uint8_t { kBudgetExhausted, kGoalFound, kOpenEmpty };

struct ExpansionOutcome {
  ExpansionStatus status = ExpansionStatus::kBudgetExhausted;
  NodeId goal = kNoNode;
};

/// Best-first expansion of `graph` under `evaluator` until the budget is spent,
/// open empties, or (with `stop_on_goal`) a goal is popped.
///
/// Successors flagged by `cache` are never generated. Reaching a node with a
/// smaller g relaxes its best-g edge and reopens it if it was closed.
ExpansionOutcome expand_best_first(SearchGraph& graph, const NodeEvaluator& evaluator,
                                   ExpansionBudget& budget, const Domain& domain, bool stop_on_goal,
                                   const DeadEndCache* cache = nullptr,
                                   SearchCounters* counters = nullptr);

/// FCost-minimal open node regardless of the evaluator the graph is keyed by.
std::optional<NodeId> select_best_f(const SearchGraph& graph);

/// Open nodes sorted by FCost (best first).
std::vector<NodeId> open_in_f_order(const SearchGraph& graph);

/// Dijkstra-style learning: every expanded non-goal node of the current
/// iteration gets h = min over successors of (c + h(successor)), computed
/// backwards from the open frontier and expanded goals. Nodes that cannot
/// reach the frontier keep h = infinity. h never decreases. Returns the
/// number of nodes whose h changed.
std::size_t dijkstra_h_update(SearchGraph& graph);

/// Actions along parent edges from the root to `target`. Throws
/// std::invalid_argument when the parent chain does not reach the root.
std::vector<ActionId> path_to(const SearchGraph& graph, NodeId target);

/// Node ids from the root to `target` inclusive.
std::vector<NodeId> node_path_to(const SearchGraph& graph, NodeId target);

}  // namespace rtss
