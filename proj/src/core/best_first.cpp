#include "rtss/core/best_first.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace rtss {

ExpansionOutcome expand_best_first(SearchGraph& graph, const NodeEvaluator& evaluator,
                                   ExpansionBudget& budget, const Domain& domain, bool stop_on_goal,
                                   const DeadEndCache* cache, SearchCounters* counters) {
  graph.set_evaluator(evaluator);
  std::vector<Successor> successors;
  for (;;) {
    if (budget.exhausted()) return {ExpansionStatus::kBudgetExhausted, kNoNode};
    if (graph.open_empty()) return {ExpansionStatus::kOpenEmpty, kNoNode};

    const NodeId id = graph.pop_open();
    ++budget.used;
    graph.mark_expanded(id);
    const StateKey state = graph.node(id).state;
    if (counters != nullptr) counters->record_expansion(state, cache);

    domain.generate_successors(state, successors);
    for (const Successor& s : successors) {
      if (cache != nullptr && cache->blocks(s.state)) {
        if (counters != nullptr) ++counters->avoided_reexpansions;
        continue;
      }
      // touch() may grow the node store; hold ids, not references, across it
      const NodeId child = graph.touch(s.state, domain);
      graph.add_predecessor(child, id, s.cost);
      const Cost candidate = graph.node(id).g + s.cost;
      SearchNode& c = graph.node(child);
      if (candidate < c.g) {
        c.g = candidate;
        c.parent = ParentEdge{id, s.action, s.cost};
        c.depth = graph.node(id).depth + 1;
        graph.push_open(child);
      }
    }

    if (stop_on_goal && graph.node(id).goal) return {ExpansionStatus::kGoalFound, id};
  }
}

std::optional<NodeId> select_best_f(const SearchGraph& graph) {
  const NodeEvaluator fcost = NodeEvaluator::f_cost();
  std::optional<NodeId> best;
  for (NodeId id : graph.open_items()) {
    if (!best || fcost.precedes(graph.node(id), graph.node(*best))) best = id;
  }
  return best;
}

std::vector<NodeId> open_in_f_order(const SearchGraph& graph) {
  const NodeEvaluator fcost = NodeEvaluator::f_cost();
  std::vector<NodeId> ids(graph.open_items().begin(), graph.open_items().end());
  std::sort(ids.begin(), ids.end(),
            [&](NodeId a, NodeId b) { return fcost.precedes(graph.node(a), graph.node(b)); });
  return ids;
}

std::size_t dijkstra_h_update(SearchGraph& graph) {
  struct Saved {
    NodeId id;
    Cost h;
  };
  std::vector<Saved> interior;
  using Entry = std::pair<Cost, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;

  for (NodeId id : graph.lss()) {
    SearchNode& n = graph.node(id);
    if (n.expanded && !n.goal) {
      interior.push_back({id, n.h});
      n.h = kInfiniteCost;
    } else if (n.on_open || (n.expanded && n.goal)) {
      frontier.push({n.h, id});
    }
  }

  while (!frontier.empty()) {
    const auto [h, id] = frontier.top();
    frontier.pop();
    if (h > graph.node(id).h) continue;  // stale entry
    for (const InEdge& e : graph.node(id).predecessors) {
      if (!graph.in_lss(e.node)) continue;
      SearchNode& p = graph.node(e.node);
      if (!p.expanded || p.goal) continue;
      const Cost candidate = e.cost + h;
      if (candidate < p.h) {
        p.h = candidate;
        frontier.push({candidate, e.node});
      }
    }
  }

  std::size_t changed = 0;
  for (const Saved& s : interior) {
    SearchNode& n = graph.node(s.id);
    n.h = std::max(n.h, s.h);
    if (n.h != s.h) ++changed;
  }
  return changed;
}

std::vector<NodeId> node_path_to(const SearchGraph& graph, NodeId target) {
  if (target == kNoNode || !graph.in_lss(target)) {
    throw std::invalid_argument("path target is not part of the current search space");
  }
  std::vector<NodeId> nodes;
  NodeId at = target;
  const std::size_t guard = graph.lss().size() + 1;
  while (at != graph.root()) {
    const SearchNode& n = graph.node(at);
    if (!n.parent || nodes.size() > guard) {
      throw std::invalid_argument("path target has no parent chain to the root");
    }
    nodes.push_back(at);
    at = n.parent->node;
  }
  nodes.push_back(at);
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

std::vector<ActionId> path_to(const SearchGraph& graph, NodeId target) {
  const std::vector<NodeId> nodes = node_path_to(graph, target);
  std::vector<ActionId> actions;
  actions.reserve(nodes.size() - 1);
  for (std::size_t i = 1; i < nodes.size(); ++i) actions.push_back(graph.node(nodes[i]).parent->action);
  return actions;
}

}  // namespace rtss
