#include <algorithm>

#include "common.hpp"

namespace rtss {

IterationReport safe_rts_iteration(SearchGraph& graph, StateKey root, const PlannerConfig& config,
                                   const Domain& domain, DeadEndCache& cache, SearchCounters* counters) {
  IterationReport report;
  report.budget = config.iteration_bound;
  graph.begin_iteration(root, domain);
  ExpansionBudget total{config.iteration_bound, 0};
  std::int64_t slice = config.initial_proof_budget;
  const NodeEvaluator fcost = NodeEvaluator::f_cost();

  while (!total.exhausted()) {
    ExpansionBudget explore{std::min(slice, total.remaining()), 0};
    const ExpansionOutcome outcome = expand_best_first(graph, fcost, explore, domain, true, &cache, counters);
    total.used += explore.used;
    report.expansions_goal += explore.used;
    if (outcome.status == ExpansionStatus::kGoalFound) {
      report.unused_budget = total.remaining();
      detail::commit_goal(graph, outcome.goal, report);
      return report;
    }
    if (outcome.status == ExpansionStatus::kOpenEmpty || total.exhausted()) break;

    // the proof target is fixed for the whole attempt
    const NodeId target = graph.open_top();
    ExpansionBudget proof_budget{std::min(slice, total.remaining()), 0};
    const ProofResult result = prove_safety(graph.node(target).state, proof_budget, domain, cache, counters);
    total.used += proof_budget.used;
    report.expansions_proof += proof_budget.used;
    ++report.proofs_attempted;
    if (const auto* proven = std::get_if<ProofProven>(&result)) {
      ++report.proofs_succeeded;
      record_proof_safety(graph, *proven, domain);
      slice = config.initial_proof_budget;
      continue;
    }
    if (const auto* exhausted = std::get_if<ProofExhausted>(&result)) {
      ++report.proofs_exhausted;
      cache_dead_ends(cache, *exhausted, &graph);
      if (cache.enabled()) graph.remove_from_open(target);
    } else {
      ++report.proofs_budget_out;
    }
    slice *= 2;
  }
  report.unused_budget = total.remaining();

  propagate_safety(graph, {}, domain);
  dijkstra_h_update(graph);
  detail::commit_safe(graph, safe_toward_best(graph), config, domain, report);
  return report;
}

}  // namespace rtss
