#include "rtss/domains/explicit_graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "rtss/domains/splitmix64.hpp"

namespace rtss::domains {

std::size_t ExplicitGraph::add_vertex(Vertex v) {
  vertices_.push_back(std::move(v));
  return vertices_.size() - 1;
}

void ExplicitGraph::add_edge(std::size_t from, std::size_t to, Cost cost) {
  if (to >= vertices_.size()) throw std::out_of_range("edge target out of range");
  auto& out = vertices_.at(from).out;
  out.push_back({static_cast<ActionId>(out.size()), StateKey{to}, cost});
}

std::vector<StateKey> ExplicitGraph::all_states() const {
  std::vector<StateKey> states;
  for (std::size_t i = 0; i < vertices_.size(); ++i) states.push_back(StateKey{i});
  return states;
}

void ExplicitGraph::generate_successors(StateKey state, std::vector<Successor>& out) const {
  const Vertex& v = at(state);
  out = v.goal ? std::vector<Successor>{} : v.out;
}

std::optional<ActionId> ExplicitGraph::identity_action(StateKey state) const {
  const Vertex& v = at(state);
  if (!v.has_identity) return std::nullopt;
  for (const Successor& s : v.out) {
    if (s.state == state) return s.action;
  }
  return std::nullopt;
}

double ExplicitGraph::travel_distance(StateKey from, StateKey to) const {
  return static_cast<double>(to.value) - static_cast<double>(from.value);
}

ExplicitGraph ExplicitGraph::chain(std::size_t n) {
  if (n == 0) throw std::invalid_argument("chain needs at least one vertex");
  ExplicitGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.vertices_[i].h = static_cast<Cost>(n - 1 - i);
    g.vertices_[i].d_safe = static_cast<int>(n - 1 - i);
    if (i + 1 < n) g.add_edge(i, i + 1);
  }
  g.vertices_[n - 1].goal = true;
  return g;
}

ExplicitGraph ExplicitGraph::funnel() {
  //   v0 -> v1, v2;  v1 -> v3, v4;  v2 -> v4, v5;  v3, v4, v5 terminal
  ExplicitGraph g(7);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(1, 4);
  g.add_edge(2, 4);
  g.add_edge(2, 5);
  for (std::size_t i = 0; i < 6; ++i) {
    g.vertices_[i].h = 1.0;
    g.vertices_[i].d_safe = 1;
  }
  g.vertices_[6].goal = true;
  return g;
}

namespace {

// Hop distance from every vertex to the nearest vertex satisfying `target`;
// -1 when none is reachable.
template <typename Pred>
std::vector<int> hops_to(const std::vector<ExplicitGraph::Vertex>& vs, Pred target) {
  std::vector<std::vector<std::size_t>> preds(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (const Successor& s : vs[i].out) preds[s.state.value].push_back(i);
  }
  std::vector<int> dist(vs.size(), -1);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (target(vs[i])) {
      dist[i] = 0;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t p : preds[v]) {
      if (dist[p] < 0 && !vs[p].goal) {
        dist[p] = dist[v] + 1;
        queue.push_back(p);
      }
    }
  }
  return dist;
}

}  // namespace

ExplicitGraph ExplicitGraph::random_dag(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_dag needs at least two vertices");
  SplitMix64 rng(seed);
  ExplicitGraph g(n);
  const std::size_t reach = 6;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double u = rng.next_unit();
    if (i > 0 && u < 0.08) continue;  // terminal sink
    if (i > 0 && u < 0.12) {
      g.vertices_[i].goal = true;
      continue;
    }
    const auto degree = 1 + rng.next_below(3);
    for (std::uint64_t k = 0; k < degree; ++k) {
      const std::size_t span = std::min(reach, n - 1 - i);
      const std::size_t to = i + 1 + static_cast<std::size_t>(rng.next_below(span));
      const bool dup = std::any_of(g.vertices_[i].out.begin(), g.vertices_[i].out.end(),
                                   [&](const Successor& s) { return s.state.value == to; });
      if (!dup) g.add_edge(i, to);
    }
  }
  g.vertices_[n - 1].goal = true;

  const auto to_goal = hops_to(g.vertices_, [](const Vertex& v) { return v.goal; });
  // the predicate is strong: only goal-connected vertices may be certified
  for (std::size_t i = 1; i < n; ++i) {
    if (!g.vertices_[i].goal && to_goal[i] >= 0 && rng.next_unit() < 0.1) g.vertices_[i].safe = true;
  }
  const auto to_anchor = hops_to(g.vertices_, [](const Vertex& v) { return v.goal || v.safe; });
  const int cap = static_cast<int>(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.vertices_[i].h = to_goal[i] >= 0 ? static_cast<Cost>(to_goal[i]) : static_cast<Cost>(cap);
    const int exact = to_anchor[i] >= 0 ? to_anchor[i] : cap;
    // inexact but informative safety distance
    g.vertices_[i].d_safe = std::min(cap, exact + static_cast<int>(rng.next_below(2)));
  }
  return g;
}

}  // namespace rtss::domains
