#include "common.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace rtss {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kLssLrta: return "lss-lrta";
    case Algorithm::kSafeRts: return "safe-rts";
    case Algorithm::kRtfs: return "rtfs";
    case Algorithm::kSafeLssLrta: return "safe-lss-lrta";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  for (Algorithm a : {Algorithm::kLssLrta, Algorithm::kSafeRts, Algorithm::kRtfs, Algorithm::kSafeLssLrta}) {
    if (text == to_string(a)) return a;
  }
  throw std::invalid_argument("unknown algorithm: " + std::string(text));
}

void PlannerConfig::validate() const {
  if (iteration_bound < 1) throw std::invalid_argument("iteration bound must be >= 1");
  if (!(exploration_ratio > 0.0 && exploration_ratio < 1.0)) {
    throw std::invalid_argument("exploration ratio must lie strictly between 0 and 1");
  }
  if (initial_proof_budget < 1) throw std::invalid_argument("initial proof budget must be >= 1");
}

std::optional<TargetChoice> safe_toward_best(const SearchGraph& graph) {
  // deepest safe node strictly below the root on each node's parent chain
  std::unordered_map<NodeId, NodeId> memo;
  auto deepest_safe = [&](NodeId start) {
    std::vector<NodeId> chain;
    NodeId found = kNoNode;
    for (NodeId at = start; at != graph.root();) {
      if (const auto it = memo.find(at); it != memo.end()) {
        found = it->second;
        break;
      }
      chain.push_back(at);
      const SearchNode& n = graph.node(at);
      if (!n.parent) break;
      at = n.parent->node;
    }
    // walk back down: a node's answer is itself if safe, else its parent's
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      if (graph.node(*it).safe()) found = *it;
      memo.emplace(*it, found);
    }
    return found;
  };

  const std::vector<NodeId> order = open_in_f_order(graph);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId target = deepest_safe(order[i]);
    if (target != kNoNode) return TargetChoice{target, order[i], static_cast<int>(i + 1)};
  }
  return std::nullopt;
}

namespace detail {

void commit_toward(const SearchGraph& graph, NodeId target, CommitMode mode, IterationReport& report) {
  const std::vector<NodeId> nodes = node_path_to(graph, target);
  std::size_t steps = nodes.size() - 1;
  if (mode == CommitMode::kSingleAction) steps = std::min<std::size_t>(steps, 1);
  for (std::size_t i = 1; i <= steps; ++i) {
    const SearchNode& n = graph.node(nodes[i]);
    report.committed_actions.push_back(n.parent->action);
    report.committed_states.push_back(n.state);
  }
  if (!report.committed_states.empty()) {
    const auto id = graph.find(report.committed_states.back());
    if (id && graph.node(*id).goal) report.status = IterationStatus::kGoalCommitted;
  }
}

void commit_goal(const SearchGraph& graph, NodeId goal, IterationReport& report) {
  commit_toward(graph, goal, CommitMode::kFullPath, report);
  report.status = IterationStatus::kGoalCommitted;
}

void commit_safe(const SearchGraph& graph, const std::optional<TargetChoice>& choice,
                 const PlannerConfig& config, const Domain& domain, IterationReport& report) {
  if (choice) {
    report.target_open_rank = choice->rank;
    commit_toward(graph, choice->target, config.commit_mode, report);
    return;
  }
  if (const auto identity = domain.identity_action(graph.root_state())) {
    report.identity_action_taken = true;
    report.committed_actions.push_back(*identity);
    report.committed_states.push_back(graph.root_state());
    return;
  }
  report.status = IterationStatus::kTerminated;
}

}  // namespace detail

std::optional<Plan> offline_astar(const Domain& domain, StateKey start) {
  SearchGraph graph;
  graph.begin_iteration(start, domain);
  ExpansionBudget budget = ExpansionBudget::unlimited();
  const ExpansionOutcome outcome =
      expand_best_first(graph, NodeEvaluator::f_cost(), budget, domain, true);
  if (outcome.status != ExpansionStatus::kGoalFound) return std::nullopt;
  Plan plan;
  plan.states.push_back(start);
  for (NodeId id : node_path_to(graph, outcome.goal)) {
    if (id == graph.root()) continue;
    plan.actions.push_back(graph.node(id).parent->action);
    plan.states.push_back(graph.node(id).state);
  }
  plan.cost = graph.node(outcome.goal).g;
  return plan;
}

}  // namespace rtss
