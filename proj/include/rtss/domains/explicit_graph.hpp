#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rtss/core/domain.hpp"

namespace rtss::domains {

/// Small hand-built or randomly generated directed graph with per-vertex
/// heuristic, d_safe and predicate. Vertex i is StateKey{i}.
class ExplicitGraph final : public Domain {
 public:
  struct Vertex {
    std::vector<Successor> out;
    Cost h = 0.0;
    int d_safe = 0;
    bool goal = false;
    bool safe = false;
    bool has_identity = false;
  };

  explicit ExplicitGraph(std::size_t vertices = 0) : vertices_(vertices) {}

  std::size_t size() const { return vertices_.size(); }
  Vertex& vertex(std::size_t i) { return vertices_.at(i); }
  const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
  std::size_t add_vertex(Vertex v);
  std::size_t add_vertex() { return add_vertex(Vertex{}); }

  /// Appends an edge; action ids count up per source vertex.
  void add_edge(std::size_t from, std::size_t to, Cost cost = 1.0);

  /// Every vertex as a state key.
  std::vector<StateKey> all_states() const;

  void generate_successors(StateKey state, std::vector<Successor>& out) const override;
  bool is_goal(StateKey state) const override { return at(state).goal; }
  Cost heuristic(StateKey state) const override { return at(state).h; }
  int safety_distance(StateKey state) const override { return at(state).d_safe; }
  SafetyVerdict safety_predicate(StateKey state) const override {
    return at(state).safe ? SafetyVerdict::kLikelySafe : SafetyVerdict::kUnknown;
  }
  std::optional<ActionId> identity_action(StateKey state) const override;
  double travel_distance(StateKey from, StateKey to) const override;
  std::string describe(StateKey state) const override { return "v" + std::to_string(state.value); }

  /// v0 -> v1 -> ... -> v{n-1}; the last vertex is the goal, unit costs, h =
  /// exact distance to the goal.
  static ExplicitGraph chain(std::size_t n);

  /// Root v0 whose descendants (v1..v5) all end in terminal non-goal vertices;
  /// v6 is a separate goal so the instance has one.
  static ExplicitGraph funnel();

  /// Random DAG on `n` vertices (edges only from lower to higher index, out
  /// degree 1..3), a few goal sinks, terminal dead-end sinks and some goal
  /// connected vertices certified safe. h = hop distance to a goal (n when
  /// there is none), d_safe = hop distance to the nearest safe-or-goal vertex
  /// plus 0 or 1, capped at n. Vertex 0 is the intended root.
  static ExplicitGraph random_dag(std::size_t n, std::uint64_t seed);

 private:
  const Vertex& at(StateKey state) const { return vertices_.at(static_cast<std::size_t>(state.value)); }

  std::vector<Vertex> vertices_;
};

}  // namespace rtss::domains
