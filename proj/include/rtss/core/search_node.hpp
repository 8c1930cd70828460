#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "rtss/core/types.hpp"
#include "rtss/safety/safety_status.hpp"

namespace rtss {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Best-g tree edge into a node.
struct ParentEdge {
  NodeId node = kNoNode;
  ActionId action = 0;
  Cost cost = 0.0;
};

/// A discovered in-edge; used by backward propagation of h, safety and dead-ends.
struct InEdge {
  NodeId node = kNoNode;
  Cost cost = 0.0;
};

/// Per-state record in a SearchGraph.
///
/// `h`, `d_safe`, `safety` and `goal` persist for the whole episode. Everything
/// else belongs to the iteration named by `iteration_stamp` and is logically
/// cleared when a newer iteration touches the node.
struct SearchNode {
  StateKey state;
  Cost g = kInfiniteCost;
  Cost h = 0.0;
  int d_safe = 0;
  int depth = 0;
  std::optional<ParentEdge> parent;
  std::vector<InEdge> predecessors;
  SafetyStatus safety = SafetyStatus::kUnknown;
  bool goal = false;
  bool on_open = false;
  bool expanded = false;
  std::uint32_t iteration_stamp = 0;

  // open-list bookkeeping
  std::uint64_t open_seq = 0;
  std::int32_t heap_slot = -1;

  Cost f() const { return g + h; }
  bool safe() const { return is_safe(safety); }
};

}  // namespace rtss
