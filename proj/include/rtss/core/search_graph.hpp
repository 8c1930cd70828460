#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rtss/core/domain.hpp"
#include "rtss/core/node_evaluator.hpp"
#include "rtss/core/search_node.hpp"

namespace rtss {

/// Agent-centered search state for one planner episode.
///
/// The node store outlives iterations: learned h values, safety statuses and
/// goal flags persist, while g, parents, predecessors and open/closed
/// membership are reset lazily by comparing each node's stamp with the current
/// iteration. Nodes touched in the current iteration form the local search
/// space (lss()).
///
/// The open list is an indexed binary heap ordered by the active evaluator.
class SearchGraph {
 public:
  SearchGraph() = default;

  /// Starts a new iteration rooted at `root`: clears the open list, logically
  /// clears all per-iteration fields and puts the root on open with g = 0.
  void begin_iteration(StateKey root, const Domain& domain);

  std::uint32_t iteration() const { return iteration_; }
  NodeId root() const { return root_; }
  StateKey root_state() const { return nodes_[root_].state; }

  // -- node store ---------------------------------------------------------

  std::optional<NodeId> find(StateKey state) const;

  /// Get-or-create without joining the current iteration. Used to record
  /// facts (safety, dead-ends) about states outside the local search space.
  NodeId remember(StateKey state, const Domain& domain);

  /// Get-or-create and join the current iteration.
  NodeId touch(StateKey state, const Domain& domain);

  bool in_lss(NodeId id) const { return nodes_[id].iteration_stamp == iteration_; }

  const SearchNode& node(NodeId id) const { return nodes_[id]; }
  SearchNode& node(NodeId id) { return nodes_[id]; }

  /// Nodes of the current iteration in generation order.
  std::span<const NodeId> lss() const { return lss_; }

  std::size_t closed_count() const { return closed_count_; }
  std::size_t store_size() const { return nodes_.size(); }

  /// Records an in-edge unless it is already known.
  void add_predecessor(NodeId child, NodeId parent, Cost cost);

  void mark_expanded(NodeId id);

  // -- open list ----------------------------------------------------------

  const NodeEvaluator& evaluator() const { return evaluator_; }

  /// Re-keys the open list when the evaluator changes.
  void set_evaluator(const NodeEvaluator& evaluator);

  bool open_empty() const { return heap_.empty(); }
  std::size_t open_size() const { return heap_.size(); }
  NodeId open_top() const { return heap_.front(); }

  /// Open node ids in heap order (not sorted).
  std::span<const NodeId> open_items() const { return heap_; }

  /// Inserts with a fresh insertion sequence number. A closed node is reopened.
  void push_open(NodeId id);
  NodeId pop_open();
  void remove_from_open(NodeId id);

  /// Restores heap order after the key of an open node decreased or increased.
  void reprioritize(NodeId id);

  /// Re-heapifies after h values of open nodes changed in bulk.
  void rebuild_open();

 private:
  bool before(NodeId a, NodeId b) const { return evaluator_.precedes(nodes_[a], nodes_[b]); }
  void place(std::size_t slot, NodeId id);
  void sift_up(std::size_t slot);
  void sift_down(std::size_t slot);
  void refresh(NodeId id);
  NodeId create(StateKey state, const Domain& domain);

  std::vector<SearchNode> nodes_;
  std::unordered_map<StateKey, NodeId> index_;
  std::vector<NodeId> lss_;
  std::vector<NodeId> heap_;
  NodeEvaluator evaluator_ = NodeEvaluator::f_cost();
  std::uint32_t iteration_ = 0;
  std::uint64_t next_seq_ = 0;
  std::size_t closed_count_ = 0;
  NodeId root_ = kNoNode;
};

}  // namespace rtss
