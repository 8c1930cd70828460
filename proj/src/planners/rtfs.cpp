#include <cmath>

#include "common.hpp"

namespace rtss {

std::vector<ProofResult> allocate_proofs_rtfs0(SearchGraph& graph, ExpansionBudget& budget,
                                               const Domain& domain, DeadEndCache& cache,
                                               SearchCounters* counters) {
  std::vector<ProofResult> results;
  while (!budget.exhausted()) {
    const std::optional<NodeId> best = select_best_f(graph);
    if (!best) break;
    const StateKey target = graph.node(*best).state;
    results.push_back(prove_safety(target, budget, domain, cache, counters));
    const auto* exhausted = std::get_if<ProofExhausted>(&results.back());
    if (exhausted == nullptr) break;
    cache_dead_ends(cache, *exhausted, &graph);
    propagate_dead_ends(graph, cache, domain);
    graph.remove_from_open(*best);
  }
  return results;
}

namespace {

void tally(const std::vector<ProofResult>& results, std::vector<ProofProven>& proven, IterationReport& report) {
  for (const ProofResult& r : results) {
    ++report.proofs_attempted;
    report.expansions_proof += proof_expansions(r);
    if (const auto* p = std::get_if<ProofProven>(&r)) {
      ++report.proofs_succeeded;
      proven.push_back(*p);
    } else if (std::holds_alternative<ProofExhausted>(r)) {
      ++report.proofs_exhausted;
    } else {
      ++report.proofs_budget_out;
    }
  }
}

}  // namespace

IterationReport rtfs_iteration(SearchGraph& graph, StateKey root, const PlannerConfig& config,
                               std::int64_t bound, const Domain& domain, DeadEndCache& cache,
                               const RtfsStrategies& strategies, SearchCounters* counters) {
  IterationReport report;
  report.budget = bound;
  graph.begin_iteration(root, domain);
  std::vector<ProofProven> proven;
  std::int64_t remaining = bound;

  // one pass without carryover redistributes what the proofs left over
  for (;;) {
    const auto explore_share = static_cast<std::int64_t>(std::floor(static_cast<double>(remaining) *
                                                                    config.exploration_ratio));
    ExpansionBudget explore{explore_share, 0};
    ExpansionOutcome outcome{ExpansionStatus::kBudgetExhausted, kNoNode};
    if (explore.limit > 0) {
      outcome = expand_best_first(graph, config.evaluator, explore, domain, true, &cache, counters);
    }
    report.expansions_goal += explore.used;
    if (outcome.status == ExpansionStatus::kGoalFound) {
      report.unused_budget = remaining - explore.used;
      detail::commit_goal(graph, outcome.goal, report);
      return report;
    }

    ExpansionBudget safety{remaining - explore_share, 0};
    tally(strategies.allocate(graph, safety, domain, cache, counters), proven, report);
    const std::int64_t spent = explore.used + safety.used;
    remaining -= spent;
    if (config.allow_budget_carryover || remaining <= 0 || spent == 0 || graph.open_empty()) break;
  }
  report.unused_budget = remaining;

  dijkstra_h_update(graph);
  propagate_dead_ends(graph, cache, domain);
  propagate_safety(graph, proven, domain);
  detail::commit_safe(graph, strategies.select_target(graph), config, domain, report);
  if (report.identity_action_taken) {
    // the framework has no waiting fallback: without a target it terminates
    report.identity_action_taken = false;
    report.committed_actions.clear();
    report.committed_states.clear();
    report.status = IterationStatus::kTerminated;
  }
  return report;
}

}  // namespace rtss
