#include "rtss/core/search_graph.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rtss {

NodeId SearchGraph::create(StateKey state, const Domain& domain) {
  const auto id = static_cast<NodeId>(nodes_.size());
  SearchNode& n = nodes_.emplace_back();
  n.state = state;
  n.h = domain.heuristic(state);
  n.d_safe = domain.safety_distance(state);
  n.goal = domain.is_goal(state);
  n.safety = is_safety_anchor(domain, state) ? SafetyStatus::kExplicitlySafe : SafetyStatus::kUnknown;
  index_.emplace(state, id);
  return id;
}

std::optional<NodeId> SearchGraph::find(StateKey state) const {
  auto it = index_.find(state);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId SearchGraph::remember(StateKey state, const Domain& domain) {
  if (auto id = find(state)) return *id;
  return create(state, domain);
}

void SearchGraph::refresh(NodeId id) {
  SearchNode& n = nodes_[id];
  if (n.iteration_stamp == iteration_) return;
  n.g = kInfiniteCost;
  n.depth = 0;
  n.parent.reset();
  n.predecessors.clear();
  n.on_open = false;
  n.expanded = false;
  n.heap_slot = -1;
  n.iteration_stamp = iteration_;
  lss_.push_back(id);
}

NodeId SearchGraph::touch(StateKey state, const Domain& domain) {
  const NodeId id = remember(state, domain);
  refresh(id);
  return id;
}

void SearchGraph::begin_iteration(StateKey root, const Domain& domain) {
  for (NodeId id : heap_) {
    nodes_[id].on_open = false;
    nodes_[id].heap_slot = -1;
  }
  heap_.clear();
  lss_.clear();
  closed_count_ = 0;
  ++iteration_;
  root_ = touch(root, domain);
  SearchNode& r = nodes_[root_];
  r.g = 0.0;
  r.depth = 0;
  push_open(root_);
}

void SearchGraph::add_predecessor(NodeId child, NodeId parent, Cost cost) {
  auto& preds = nodes_[child].predecessors;
  for (InEdge& e : preds) {
    if (e.node == parent) {
      e.cost = std::min(e.cost, cost);
      return;
    }
  }
  preds.push_back({parent, cost});
}

void SearchGraph::mark_expanded(NodeId id) {
  SearchNode& n = nodes_[id];
  assert(!n.on_open);
  if (!n.expanded) {
    n.expanded = true;
    ++closed_count_;
  }
}

void SearchGraph::set_evaluator(const NodeEvaluator& evaluator) {
  if (evaluator == evaluator_) return;
  evaluator_ = evaluator;
  rebuild_open();
}

void SearchGraph::rebuild_open() {
  for (std::size_t i = heap_.size() / 2; i-- > 0;) sift_down(i);
}

void SearchGraph::place(std::size_t slot, NodeId id) {
  heap_[slot] = id;
  nodes_[id].heap_slot = static_cast<std::int32_t>(slot);
}

void SearchGraph::sift_up(std::size_t slot) {
  const NodeId id = heap_[slot];
  while (slot > 0) {
    const std::size_t parent = (slot - 1) / 2;
    if (!before(id, heap_[parent])) break;
    place(slot, heap_[parent]);
    slot = parent;
  }
  place(slot, id);
}

void SearchGraph::sift_down(std::size_t slot) {
  const NodeId id = heap_[slot];
  const std::size_t n = heap_.size();
  for (;;) {
    std::size_t child = 2 * slot + 1;
    if (child >= n) break;
    if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], id)) break;
    place(slot, heap_[child]);
    slot = child;
  }
  place(slot, id);
}

void SearchGraph::push_open(NodeId id) {
  SearchNode& n = nodes_[id];
  if (n.on_open) {
    reprioritize(id);
    return;
  }
  if (n.expanded) {
    n.expanded = false;
    --closed_count_;
  }
  n.on_open = true;
  n.open_seq = next_seq_++;
  heap_.push_back(id);
  sift_up(heap_.size() - 1);
}

NodeId SearchGraph::pop_open() {
  if (heap_.empty()) throw std::logic_error("pop_open on empty open list");
  const NodeId top = heap_.front();
  const NodeId last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    place(0, last);
    sift_down(0);
  }
  nodes_[top].on_open = false;
  nodes_[top].heap_slot = -1;
  return top;
}

void SearchGraph::remove_from_open(NodeId id) {
  SearchNode& n = nodes_[id];
  if (!n.on_open) return;
  const auto slot = static_cast<std::size_t>(n.heap_slot);
  const NodeId last = heap_.back();
  heap_.pop_back();
  n.on_open = false;
  n.heap_slot = -1;
  if (slot < heap_.size()) {
    place(slot, last);
    sift_up(slot);
    sift_down(static_cast<std::size_t>(nodes_[last].heap_slot));
  }
}

void SearchGraph::reprioritize(NodeId id) {
  const SearchNode& n = nodes_[id];
  if (!n.on_open) return;
  const auto slot = static_cast<std::size_t>(n.heap_slot);
  sift_up(slot);
  sift_down(static_cast<std::size_t>(nodes_[id].heap_slot));
}

}  // namespace rtss
