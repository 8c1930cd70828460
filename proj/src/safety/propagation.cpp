#include <deque>

#include "rtss/safety/safety.hpp"

namespace rtss {

std::size_t record_proof_safety(SearchGraph& graph, const ProofProven& proof, const Domain& domain) {
  std::size_t marked = 0;
  for (std::size_t i = 0; i < proof.path.size(); ++i) {
    const StateKey state = proof.path[i];
    const bool known = graph.find(state).has_value();
    const NodeId id = graph.remember(state, domain);
    SearchNode& n = graph.node(id);
    const bool was_safe = known && n.safe();
    if (n.safety != SafetyStatus::kExplicitlySafe) {
      n.safety = (i + 1 == proof.path.size()) ? SafetyStatus::kExplicitlySafe
                                               : SafetyStatus::kImplicitlySafe;
    }
    if (!was_safe) ++marked;
  }
  return marked;
}

std::size_t propagate_safety(SearchGraph& graph, std::span<const ProofProven> proofs,
                             const Domain& domain) {
  std::size_t marked = 0;
  for (const ProofProven& p : proofs) marked += record_proof_safety(graph, p, domain);

  std::deque<NodeId> work;
  for (NodeId id : graph.lss()) {
    if (graph.node(id).safe()) work.push_back(id);
  }
  while (!work.empty()) {
    const NodeId id = work.front();
    work.pop_front();
    for (const InEdge& e : graph.node(id).predecessors) {
      if (!graph.in_lss(e.node)) continue;
      SearchNode& p = graph.node(e.node);
      if (p.safety != SafetyStatus::kUnknown) continue;
      p.safety = SafetyStatus::kImplicitlySafe;
      ++marked;
      work.push_back(e.node);
    }
  }
  return marked;
}

namespace {

bool flagged(const SearchGraph& graph, const DeadEndCache& cache, StateKey state) {
  if (cache.contains(state)) return true;
  const auto id = graph.find(state);
  return id && graph.node(*id).safety == SafetyStatus::kDeadEnd;
}

}  // namespace

std::size_t propagate_dead_ends(SearchGraph& graph, DeadEndCache& cache, const Domain& domain) {
  std::size_t newly = 0;
  std::vector<Successor> successors;

  auto flag_node = [&](NodeId id) {
    SearchNode& n = graph.node(id);
    if (cache.flag(n.state) || n.safety != SafetyStatus::kDeadEnd) ++newly;
    n.safety = SafetyStatus::kDeadEnd;
    graph.remove_from_open(id);
  };

  auto provably_dead = [&](NodeId id) {
    const SearchNode& n = graph.node(id);
    if (!n.expanded || n.goal || n.safety != SafetyStatus::kUnknown) return false;
    if (n.h == kInfiniteCost) return true;
    domain.generate_successors(n.state, successors);
    for (const Successor& s : successors) {
      if (!flagged(graph, cache, s.state)) return false;
    }
    return true;
  };

  std::deque<NodeId> work(graph.lss().begin(), graph.lss().end());
  while (!work.empty()) {
    const NodeId id = work.front();
    work.pop_front();
    if (!provably_dead(id)) continue;
    flag_node(id);
    for (const InEdge& e : graph.node(id).predecessors) {
      if (graph.in_lss(e.node)) work.push_back(e.node);
    }
  }

  std::vector<NodeId> doomed;
  for (NodeId id : graph.open_items()) {
    if (flagged(graph, cache, graph.node(id).state)) doomed.push_back(id);
  }
  for (NodeId id : doomed) {
    SearchNode& n = graph.node(id);
    if (n.safety == SafetyStatus::kUnknown) n.safety = SafetyStatus::kDeadEnd;
    graph.remove_from_open(id);
  }
  return newly;
}

std::size_t cache_dead_ends(DeadEndCache& cache, const ProofExhausted& exhausted,
                            SearchGraph* graph) {
  std::size_t newly = 0;
  for (StateKey state : exhausted.visited) {
    if (cache.flag(state)) ++newly;
    if (graph == nullptr) continue;
    if (const auto id = graph->find(state)) {
      SearchNode& n = graph->node(*id);
      if (n.safety == SafetyStatus::kUnknown) n.safety = SafetyStatus::kDeadEnd;
    }
  }
  return newly;
}

}  // namespace rtss
