#include "rtss/domains/ground_truth.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace rtss::domains {

GroundTruth true_safe_set(const Domain& domain, const std::vector<StateKey>& seeds,
                          std::size_t max_states) {
  GroundTruth truth;
  std::unordered_map<StateKey, std::size_t> index;
  std::vector<std::vector<std::size_t>> preds;
  auto discover = [&](StateKey s) {
    const auto [it, fresh] = index.emplace(s, truth.states.size());
    if (fresh) {
      if (truth.states.size() >= max_states) {
        throw std::length_error("instance too large for exhaustive enumeration");
      }
      truth.states.push_back(s);
      preds.emplace_back();
    }
    return it->second;
  };
  for (StateKey s : seeds) discover(s);
  std::vector<Successor> out;
  for (std::size_t i = 0; i < truth.states.size(); ++i) {
    domain.generate_successors(truth.states[i], out);
    for (const Successor& succ : out) {
      const std::size_t j = discover(succ.state);
      preds[j].push_back(i);
    }
  }

  std::deque<std::size_t> queue;
  std::vector<char> safe(truth.states.size(), 0);
  for (std::size_t i = 0; i < truth.states.size(); ++i) {
    if (domain.is_goal(truth.states[i])) {
      safe[i] = 1;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t p : preds[v]) {
      if (!safe[p]) {
        safe[p] = 1;
        queue.push_back(p);
      }
    }
  }
  for (std::size_t i = 0; i < truth.states.size(); ++i) {
    if (safe[i]) truth.safe.insert(truth.states[i]);
  }
  return truth;
}

std::unordered_set<StateKey> safe_set_by_fixpoint(const Domain& domain,
                                                  const std::vector<StateKey>& states) {
  std::unordered_set<StateKey> safe;
  for (StateKey s : states) {
    if (domain.is_goal(s)) safe.insert(s);
  }
  std::vector<Successor> out;
  for (bool changed = true; changed;) {
    changed = false;
    for (StateKey s : states) {
      if (safe.contains(s)) continue;
      domain.generate_successors(s, out);
      if (std::any_of(out.begin(), out.end(), [&](const Successor& x) { return safe.contains(x.state); })) {
        safe.insert(s);
        changed = true;
      }
    }
  }
  return safe;
}

DeadEndCache dead_end_oracle(const Domain& /*domain*/, const GroundTruth& truth) {
  DeadEndCache cache(true);
  for (StateKey s : truth.states) {
    if (truth.is_dead_end(s)) cache.flag(s);
  }
  return cache;
}

std::optional<std::vector<StateKey>> optimal_proof_path(const Domain& domain, StateKey state,
                                                        std::size_t max_states) {
  std::unordered_map<StateKey, StateKey> parent;
  std::deque<StateKey> queue{state};
  parent.emplace(state, state);
  std::vector<Successor> out;
  while (!queue.empty()) {
    const StateKey s = queue.front();
    queue.pop_front();
    if (is_safety_anchor(domain, s)) {
      std::vector<StateKey> path{s};
      for (StateKey at = s; !(at == state);) {
        at = parent.at(at);
        path.push_back(at);
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    domain.generate_successors(s, out);
    for (const Successor& succ : out) {
      if (parent.emplace(succ.state, s).second) {
        if (parent.size() > max_states) throw std::length_error("proof oracle exceeded its state limit");
        queue.push_back(succ.state);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> optimal_proof_oracle(const Domain& domain, StateKey state,
                                                std::size_t max_states) {
  auto path = optimal_proof_path(domain, state, max_states);
  if (!path) return std::nullopt;
  return path->size();
}

}  // namespace rtss::domains
