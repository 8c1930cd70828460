#include "rtss/domains/racetrack.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace rtss::domains {

RacetrackInstance RacetrackInstance::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "racetrack v1") {
    throw std::invalid_argument("not a racetrack v1 file");
  }
  if (!std::getline(in, line)) throw std::invalid_argument("missing racetrack header line");
  std::istringstream header(line);
  std::string kw, kh;
  int width = 0;
  int height = 0;
  header >> kw >> width >> kh >> height;
  if (!header || kw != "width" || kh != "height" || width < 1 || height < 1) {
    throw std::invalid_argument("malformed racetrack header: " + line);
  }
  RacetrackInstance inst;
  inst.width_ = width;
  inst.height_ = height;
  for (int y = 0; y < height; ++y) {
    if (!std::getline(in, line)) throw std::invalid_argument("racetrack body is truncated");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() != static_cast<std::size_t>(width)) {
      throw std::invalid_argument("racetrack row " + std::to_string(y) + " has wrong width");
    }
    for (int x = 0; x < width; ++x) {
      switch (line[static_cast<std::size_t>(x)]) {
        case '#':
        case '.': break;
        case '*': inst.goals_.push_back({x, y}); break;
        case '@': inst.starts_.push_back({x, y}); break;
        default: throw std::invalid_argument("unexpected character in racetrack row " + std::to_string(y));
      }
    }
    inst.rows_.push_back(line);
  }
  if (inst.goals_.empty()) throw std::invalid_argument("racetrack map has no goal cells");
  return inst;
}

std::string RacetrackInstance::serialize() const {
  std::ostringstream out;
  out << "racetrack v1\nwidth " << width_ << " height " << height_ << "\n";
  for (const auto& row : rows_) out << row << "\n";
  return out.str();
}

std::vector<Cell> RacetrackInstance::free_cells() const {
  std::vector<Cell> cells;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (!blocked(x, y) && !goal_cell(x, y)) cells.push_back({x, y});
    }
  }
  return cells;
}

std::vector<Cell> supercover_line(Cell from, Cell to) {
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  const int nx = std::abs(dx);
  const int ny = std::abs(dy);
  const int sx = dx > 0 ? 1 : -1;
  const int sy = dy > 0 ? 1 : -1;
  std::vector<Cell> cells{from};
  Cell p = from;
  for (int ix = 0, iy = 0; ix < nx || iy < ny;) {
    const long decision = static_cast<long>(1 + 2 * ix) * ny - static_cast<long>(1 + 2 * iy) * nx;
    if (decision == 0) {
      cells.push_back({p.x + sx, p.y});
      cells.push_back({p.x, p.y + sy});
      p.x += sx;
      p.y += sy;
      ++ix;
      ++iy;
    } else if (decision < 0) {
      p.x += sx;
      ++ix;
    } else {
      p.y += sy;
      ++iy;
    }
    cells.push_back(p);
  }
  return cells;
}

int racetrack_steps_needed(int speed, int distance) {
  if (distance <= 0) return 0;
  const double b = 2.0 * speed + 1.0;
  int n = static_cast<int>(std::ceil((-b + std::sqrt(b * b + 8.0 * distance)) / 2.0));
  n = std::max(n, 0);
  auto covers = [&](long k) { return speed * k + k * (k + 1) / 2 >= distance; };
  while (n > 0 && covers(n - 1)) --n;
  while (!covers(n)) ++n;
  return n;
}

RacetrackDomain::RacetrackDomain(RacetrackInstance instance)
    : instance_(std::move(instance)), vmax_(std::max(instance_.width(), instance_.height())) {}

StateKey RacetrackDomain::encode(const RacetrackState& s) const {
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(vmax_) + 1;
  std::uint64_t k = s.crashed ? 1 : 0;
  k = k * static_cast<std::uint64_t>(instance_.height()) + static_cast<std::uint64_t>(s.y);
  k = k * static_cast<std::uint64_t>(instance_.width()) + static_cast<std::uint64_t>(s.x);
  k = k * span + static_cast<std::uint64_t>(s.vx + vmax_);
  k = k * span + static_cast<std::uint64_t>(s.vy + vmax_);
  return StateKey{k};
}

RacetrackState RacetrackDomain::decode(StateKey key) const {
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(vmax_) + 1;
  std::uint64_t k = key.value;
  RacetrackState s;
  s.vy = static_cast<int>(k % span) - vmax_;
  k /= span;
  s.vx = static_cast<int>(k % span) - vmax_;
  k /= span;
  s.x = static_cast<int>(k % static_cast<std::uint64_t>(instance_.width()));
  k /= static_cast<std::uint64_t>(instance_.width());
  s.y = static_cast<int>(k % static_cast<std::uint64_t>(instance_.height()));
  k /= static_cast<std::uint64_t>(instance_.height());
  s.crashed = k != 0;
  return s;
}

RacetrackState RacetrackDomain::step(const RacetrackState& s, int ax, int ay) const {
  const RacetrackState crash{s.x, s.y, 0, 0, true};
  const int vx = s.vx + ax;
  const int vy = s.vy + ay;
  if (std::abs(vx) > vmax_ || std::abs(vy) > vmax_) return crash;
  const Cell to{s.x + vx, s.y + vy};
  if (!instance_.inside(to.x, to.y)) return crash;
  for (const Cell& c : supercover_line({s.x, s.y}, to)) {
    if (instance_.blocked(c.x, c.y)) return crash;
  }
  return {to.x, to.y, vx, vy, false};
}

Cost RacetrackDomain::h(const RacetrackState& s) const {
  if (s.crashed) return kInfiniteCost;
  int best = INT_MAX;
  for (const Cell& g : instance_.goals()) {
    const int nx = racetrack_steps_needed(std::abs(s.vx), std::abs(g.x - s.x));
    const int ny = racetrack_steps_needed(std::abs(s.vy), std::abs(g.y - s.y));
    best = std::min(best, std::max(nx, ny));
  }
  return static_cast<Cost>(best);
}

void RacetrackDomain::generate_successors(StateKey state, std::vector<Successor>& out) const {
  out.clear();
  const RacetrackState s = decode(state);
  if (s.crashed || instance_.goal_cell(s.x, s.y)) return;
  for (int ax = -1; ax <= 1; ++ax) {
    for (int ay = -1; ay <= 1; ++ay) {
      out.push_back({racetrack_action(ax, ay), encode(step(s, ax, ay)), 1.0});
    }
  }
}

bool RacetrackDomain::is_goal(StateKey state) const {
  const RacetrackState s = decode(state);
  return !s.crashed && instance_.goal_cell(s.x, s.y);
}

int RacetrackDomain::safety_distance(StateKey state) const {
  const RacetrackState s = decode(state);
  // a crashed car never stops anywhere safe
  if (s.crashed) return INT_MAX / 2;
  return std::max(std::abs(s.vx), std::abs(s.vy));
}

SafetyVerdict RacetrackDomain::safety_predicate(StateKey state) const {
  const RacetrackState s = decode(state);
  return (!s.crashed && s.vx == 0 && s.vy == 0) ? SafetyVerdict::kLikelySafe : SafetyVerdict::kUnknown;
}

std::optional<ActionId> RacetrackDomain::identity_action(StateKey state) const {
  const RacetrackState s = decode(state);
  if (s.crashed || s.vx != 0 || s.vy != 0 || instance_.goal_cell(s.x, s.y)) return std::nullopt;
  return racetrack_action(0, 0);
}

double RacetrackDomain::travel_distance(StateKey from, StateKey to) const {
  const RacetrackState a = decode(from);
  const RacetrackState b = decode(to);
  return std::hypot(static_cast<double>(b.x - a.x), static_cast<double>(b.y - a.y));
}

std::string RacetrackDomain::describe(StateKey state) const {
  const RacetrackState s = decode(state);
  std::ostringstream out;
  out << "(x=" << s.x << ",y=" << s.y << ",vx=" << s.vx << ",vy=" << s.vy
      << (s.crashed ? ",crashed" : "") << ")";
  return out.str();
}

}  // namespace rtss::domains
