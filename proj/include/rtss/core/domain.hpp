#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtss/core/types.hpp"

namespace rtss {

/// Codomain of a safety predicate: a state is either likely safe or nothing is known.
enum class SafetyVerdict : std::uint8_t { kUnknown, kLikelySafe };

struct Successor {
  ActionId action = 0;
  StateKey state;
  Cost cost = 1.0;
};

/// Read-only view of a deterministic search problem together with its safety
/// functions. Implementations are immutable and may be shared between threads.
class Domain {
 public:
  virtual ~Domain() = default;

  /// Replaces the contents of `out` with the successors of `state`, in a fixed
  /// deterministic order. A non-goal state with no successors is a terminal dead-end.
  virtual void generate_successors(StateKey state, std::vector<Successor>& out) const = 0;

  virtual bool is_goal(StateKey state) const = 0;

  /// Admissible estimate of the cost-to-go.
  virtual Cost heuristic(StateKey state) const = 0;

  /// d_safe: estimated number of transitions to the nearest likely-safe state.
  virtual int safety_distance(StateKey state) const = 0;

  /// f_safe.
  virtual SafetyVerdict safety_predicate(StateKey state) const = 0;

  /// The action that maps `state` onto itself, when the domain offers one there.
  virtual std::optional<ActionId> identity_action(StateKey state) const = 0;

  /// Distance covered between two states, used for velocity accounting.
  virtual double travel_distance(StateKey from, StateKey to) const = 0;

  virtual std::string describe(StateKey state) const = 0;
};

inline std::vector<Successor> successors_of(const Domain& domain, StateKey state) {
  std::vector<Successor> out;
  domain.generate_successors(state, out);
  return out;
}

/// Goal states are trivially safe, so they anchor proofs exactly like
/// predicate-certified states.
inline bool is_safety_anchor(const Domain& domain, StateKey state) {
  return domain.is_goal(state) || domain.safety_predicate(state) == SafetyVerdict::kLikelySafe;
}

/// Applies `action` at `state` using the ground-truth dynamics.
std::optional<Successor> apply_action(const Domain& domain, StateKey state, ActionId action);

}  // namespace rtss
