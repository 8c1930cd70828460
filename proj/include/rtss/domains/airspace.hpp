#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rtss/core/domain.hpp"

namespace rtss::domains {

/// Immutable Airspace world: a strip `length` cells long whose altitudes
/// 2..max_altitude carry obstacles. Altitudes 0 and 1 are always free.
class AirspaceInstance {
 public:
  /// Obstacles are drawn from a SplitMix64 stream seeded with `seed`, altitude
  /// outer (2..max_altitude), distance inner; a cell is blocked iff
  /// (next() >> 11) * 2^-53 < p_obs. Throws std::invalid_argument on bad
  /// parameters.
  static AirspaceInstance generate(int length, int max_altitude, double p_obs, std::uint64_t seed);

  /// Parses the `airspace v1` text format and checks that the body equals the
  /// grid regenerated from the header.
  static AirspaceInstance parse(std::string_view text);

  std::string serialize() const;

  int length() const { return length_; }
  int max_altitude() const { return max_altitude_; }
  double p_obs() const { return p_obs_; }
  std::uint64_t seed() const { return seed_; }

  bool blocked(int altitude, int distance) const {
    if (altitude < 2 || distance < 0 || distance >= length_) return false;
    return cells_[static_cast<std::size_t>(altitude - 2) * length_ + distance] != 0;
  }

  std::size_t obstacle_count() const;

  /// Obstacle-free instance; test convenience.
  static AirspaceInstance open_sky(int length, int max_altitude);

  /// Copy of this instance with one cell toggled; test convenience.
  AirspaceInstance with_obstacle(int altitude, int distance, bool value = true) const;

  friend bool operator==(const AirspaceInstance&, const AirspaceInstance&) = default;

 private:
  AirspaceInstance(int length, int max_altitude, double p_obs, std::uint64_t seed);

  int length_ = 0;
  int max_altitude_ = 0;
  double p_obs_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<std::uint8_t> cells_;  // (altitude - 2) * length + distance
};

struct AirspaceState {
  int d = 0;  // distance travelled; goal at d == length
  int a = 0;  // altitude, also the horizontal speed

  friend bool operator==(const AirspaceState&, const AirspaceState&) = default;
};

enum AirspaceAction : ActionId { kClimb = 0, kKeep = 1, kDescend = 2 };

struct AirspaceMove {
  AirspaceAction action;
  AirspaceState next;
};

/// Columns sampled by the collision check of the segment (from) -> (to): one
/// sample per integer horizontal step, altitude linearly interpolated and
/// rounded half-up, endpoints included. Returned as (altitude, distance).
std::vector<std::pair<int, int>> airspace_segment_cells(AirspaceState from, AirspaceState to);

/// 1 - (1 - p_obs)^altitude: chance an altitude-keeping move at `altitude`
/// meets an obstacle.
double collision_probability(int altitude, double p_obs);

int airspace_d_safe(AirspaceState state);
SafetyVerdict airspace_f_safe(AirspaceState state);

class AirspaceDomain final : public Domain {
 public:
  explicit AirspaceDomain(AirspaceInstance instance);

  const AirspaceInstance& instance() const { return instance_; }

  StateKey encode(AirspaceState s) const {
    return StateKey{static_cast<std::uint64_t>(s.d) * static_cast<std::uint64_t>(stride_) +
                    static_cast<std::uint64_t>(s.a)};
  }
  AirspaceState decode(StateKey key) const {
    return {static_cast<int>(key.value / stride_), static_cast<int>(key.value % stride_)};
  }

  StateKey start() const { return encode({0, 0}); }

  /// Valid moves in the order climb, keep, descend.
  std::vector<AirspaceMove> moves(AirspaceState s) const;

  /// (length - d) / max_altitude.
  Cost h(AirspaceState s) const;

  /// Every cell state (d in [0, length], a in [0, max_altitude]) not inside an obstacle.
  std::vector<StateKey> all_states() const;

  void generate_successors(StateKey state, std::vector<Successor>& out) const override;
  bool is_goal(StateKey state) const override { return decode(state).d >= instance_.length(); }
  Cost heuristic(StateKey state) const override { return h(decode(state)); }
  int safety_distance(StateKey state) const override { return airspace_d_safe(decode(state)); }
  SafetyVerdict safety_predicate(StateKey state) const override {
    return airspace_f_safe(decode(state));
  }
  std::optional<ActionId> identity_action(StateKey state) const override;
  double travel_distance(StateKey from, StateKey to) const override;
  std::string describe(StateKey state) const override;

 private:
  bool segment_clear(AirspaceState from, AirspaceState to) const;

  AirspaceInstance instance_;
  int stride_;
};

}  // namespace rtss::domains
