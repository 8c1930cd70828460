#pragma once

#include <cstddef>
#include <optional>
#include <unordered_set>
#include <vector>

#include "rtss/core/domain.hpp"
#include "rtss/safety/dead_end_cache.hpp"

namespace rtss::domains {

inline constexpr std::size_t kMaxOracleStates = 10'000'000;

/// Brute-force reachability facts over every state reachable from `seeds`.
struct GroundTruth {
  std::vector<StateKey> states;         // forward-reachable, discovery order
  std::unordered_set<StateKey> safe;    // those with a path to a goal

  bool is_safe(StateKey s) const { return safe.contains(s); }
  bool is_dead_end(StateKey s) const { return !safe.contains(s); }
};

/// Enumerates everything reachable from `seeds`, then runs backward BFS from
/// the goals. Throws std::length_error past `max_states`.
GroundTruth true_safe_set(const Domain& domain, const std::vector<StateKey>& seeds,
                          std::size_t max_states = kMaxOracleStates);

/// The same set computed as the least fixpoint of "is a goal or has a safe
/// successor"; an independent cross-check of true_safe_set.
std::unordered_set<StateKey> safe_set_by_fixpoint(const Domain& domain, const std::vector<StateKey>& states);

/// A cache with every reachable true dead-end flagged; drives the ideal
/// dead-end detector oracle planner.
DeadEndCache dead_end_oracle(const Domain& domain, const GroundTruth& truth);

/// Shortest successor path (in states) from `state` to a goal or
/// predicate-certified state; absent when none is reachable.
std::optional<std::vector<StateKey>> optimal_proof_path(const Domain& domain, StateKey state,
                                                        std::size_t max_states = kMaxOracleStates);

/// |proof*| in states: 1 for an anchor itself.
std::optional<std::size_t> optimal_proof_oracle(const Domain& domain, StateKey state,
                                                std::size_t max_states = kMaxOracleStates);

}  // namespace rtss::domains
