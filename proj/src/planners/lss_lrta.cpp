#include "common.hpp"

namespace rtss {

IterationReport lss_lrta_iteration(SearchGraph& graph, StateKey root, const PlannerConfig& config,
                                   const Domain& domain, const DeadEndCache* filter,
                                   SearchCounters* counters) {
  IterationReport report;
  report.budget = config.iteration_bound;
  graph.begin_iteration(root, domain);
  ExpansionBudget budget{config.iteration_bound, 0};
  const ExpansionOutcome outcome =
      expand_best_first(graph, NodeEvaluator::f_cost(), budget, domain, true, filter, counters);
  report.expansions_goal = budget.used;
  report.unused_budget = budget.remaining();

  if (outcome.status == ExpansionStatus::kGoalFound) {
    detail::commit_goal(graph, outcome.goal, report);
    return report;
  }
  // the last expansion may empty open just as the budget runs out
  if (outcome.status == ExpansionStatus::kOpenEmpty || graph.open_empty()) {
    report.status = IterationStatus::kFailure;
    return report;
  }
  dijkstra_h_update(graph);
  detail::commit_toward(graph, *select_best_f(graph), config.commit_mode, report);
  return report;
}

IterationReport safe_lss_lrta_iteration(SearchGraph& graph, StateKey root, const PlannerConfig& config,
                                        const Domain& domain, const DeadEndCache& truth,
                                        SearchCounters* counters) {
  return lss_lrta_iteration(graph, root, config, domain, &truth, counters);
}

}  // namespace rtss
