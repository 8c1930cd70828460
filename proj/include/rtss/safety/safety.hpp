#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "rtss/core/best_first.hpp"
#include "rtss/core/domain.hpp"
#include "rtss/core/search_graph.hpp"
#include "rtss/safety/dead_end_cache.hpp"

namespace rtss {

/// A successor path from the proof target to an explicitly safe state.
struct ProofProven {
  std::vector<StateKey> path;
  std::int64_t expansions = 0;
};

/// The search space below the target ran out without meeting a safe state.
/// `visited` holds every expanded state, target first.
struct ProofExhausted {
  std::vector<StateKey> visited;
  std::int64_t expansions = 0;
};

struct ProofBudgetOut {
  std::int64_t expansions = 0;
};

using ProofResult = std::variant<ProofProven, ProofExhausted, ProofBudgetOut>;

std::int64_t proof_expansions(const ProofResult& result);

struct ProofOptions {
  /// When set, popping a node that is closed in this graph's current
  /// iteration is not charged to the budget: its successors are already known.
  const SearchGraph* free_lss = nullptr;
};

/// Best-first search from `target` ordered by d_safe (ties: lower h, then
/// insertion order), ending at the first popped explicitly safe state.
///
/// Proof nodes never enter the goal-search graph. States blocked by `cache`
/// are never generated. An explicitly safe target is Proven([target]) with no
/// expansions. `budget.used` is advanced by the charged expansions.
ProofResult prove_safety(StateKey target, ExpansionBudget& budget, const Domain& domain,
                         const DeadEndCache& cache, SearchCounters* counters = nullptr,
                         const ProofOptions& options = {});

/// Marks the states of each proven path safe (the last explicitly, the rest
/// implicitly), then closes safety backwards over the predecessor edges of the
/// current iteration from every safe node. Returns the number of states that
/// were not known safe before the call.
std::size_t propagate_safety(SearchGraph& graph, std::span<const ProofProven> proofs,
                             const Domain& domain);

/// Flags, to a fixpoint, every expanded node of the current iteration whose
/// successors are all flagged (terminal non-goal nodes included) or whose
/// learned h is infinite. Flagged nodes get DeadEnd status and leave the open
/// list, together with any open node the cache already flags. Returns the
/// number of newly flagged states.
std::size_t propagate_dead_ends(SearchGraph& graph, DeadEndCache& cache, const Domain& domain);

/// Flags every state of an exhausted proof. States present in `graph` also get
/// DeadEnd status. Returns the number of new flags.
std::size_t cache_dead_ends(DeadEndCache& cache, const ProofExhausted& exhausted,
                            SearchGraph* graph = nullptr);

/// Records the safety established by a proven path in the graph's node store.
/// Returns the number of states that were not known safe before.
std::size_t record_proof_safety(SearchGraph& graph, const ProofProven& proof, const Domain& domain);

}  // namespace rtss
