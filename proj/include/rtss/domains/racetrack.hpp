#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rtss/core/domain.hpp"

namespace rtss::domains {

struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Grid track loaded from the `racetrack v1` text format.
class RacetrackInstance {
 public:
  /// Throws std::invalid_argument on a malformed header, a ragged body, an
  /// unknown character, or a map without goal cells.
  static RacetrackInstance parse(std::string_view text);

  std::string serialize() const;

  int width() const { return width_; }
  int height() const { return height_; }
  bool inside(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  bool blocked(int x, int y) const { return !inside(x, y) || cell(x, y) == '#'; }
  bool goal_cell(int x, int y) const { return inside(x, y) && cell(x, y) == '*'; }

  const std::vector<Cell>& starts() const { return starts_; }
  const std::vector<Cell>& goals() const { return goals_; }

  /// Every unblocked non-goal cell, row-major.
  std::vector<Cell> free_cells() const;

 private:
  char cell(int x, int y) const { return rows_[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]; }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::string> rows_;
  std::vector<Cell> starts_;
  std::vector<Cell> goals_;
};

struct RacetrackState {
  int x = 0;
  int y = 0;
  int vx = 0;
  int vy = 0;
  bool crashed = false;

  friend bool operator==(const RacetrackState&, const RacetrackState&) = default;
};

/// Cells touched by the segment between two cell centres; both cells are
/// included where the segment passes exactly through a corner.
std::vector<Cell> supercover_line(Cell from, Cell to);

/// Smallest n with speed*n + n(n+1)/2 >= distance.
int racetrack_steps_needed(int speed, int distance);

/// Action ids: (ax + 1) * 3 + (ay + 1) for accelerations in {-1, 0, 1}^2.
constexpr ActionId racetrack_action(int ax, int ay) { return (ax + 1) * 3 + (ay + 1); }

class RacetrackDomain final : public Domain {
 public:
  explicit RacetrackDomain(RacetrackInstance instance);

  const RacetrackInstance& instance() const { return instance_; }

  StateKey encode(const RacetrackState& s) const;
  RacetrackState decode(StateKey key) const;

  StateKey start_at(Cell c) const { return encode({c.x, c.y, 0, 0, false}); }

  /// Deterministic dynamics: v' = v + a, p' = p + v'. A move whose supercover
  /// line leaves the map or touches a blocked cell ends in the crashed
  /// terminal state at the origin cell.
  RacetrackState step(const RacetrackState& s, int ax, int ay) const;

  Cost h(const RacetrackState& s) const;

  void generate_successors(StateKey state, std::vector<Successor>& out) const override;
  bool is_goal(StateKey state) const override;
  Cost heuristic(StateKey state) const override { return h(decode(state)); }
  int safety_distance(StateKey state) const override;
  SafetyVerdict safety_predicate(StateKey state) const override;
  std::optional<ActionId> identity_action(StateKey state) const override;
  double travel_distance(StateKey from, StateKey to) const override;
  std::string describe(StateKey state) const override;

 private:
  RacetrackInstance instance_;
  int vmax_;
};

}  // namespace rtss::domains
