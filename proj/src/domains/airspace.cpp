#include "rtss/domains/airspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "rtss/domains/splitmix64.hpp"

namespace rtss::domains {

namespace {

void check_parameters(int length, int max_altitude, double p_obs) {
  if (length < 1) throw std::invalid_argument("airspace length must be >= 1");
  if (max_altitude < 1) throw std::invalid_argument("airspace maxAltitude must be >= 1");
  if (!(p_obs >= 0.0 && p_obs < 1.0)) throw std::invalid_argument("airspace pObs must be in [0, 1)");
}

// floor(num / den) for den > 0
int floor_div(int num, int den) {
  int q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

}  // namespace

AirspaceInstance::AirspaceInstance(int length, int max_altitude, double p_obs, std::uint64_t seed)
    : length_(length),
      max_altitude_(max_altitude),
      p_obs_(p_obs),
      seed_(seed),
      cells_(static_cast<std::size_t>(std::max(max_altitude - 1, 0)) * length, 0) {}

AirspaceInstance AirspaceInstance::generate(int length, int max_altitude, double p_obs,
                                            std::uint64_t seed) {
  check_parameters(length, max_altitude, p_obs);
  AirspaceInstance inst(length, max_altitude, p_obs, seed);
  SplitMix64 rng(seed);
  std::size_t cell = 0;
  for (int a = 2; a <= max_altitude; ++a) {
    for (int d = 0; d < length; ++d) inst.cells_[cell++] = rng.next_unit() < p_obs ? 1 : 0;
  }
  return inst;
}

AirspaceInstance AirspaceInstance::open_sky(int length, int max_altitude) {
  return generate(length, max_altitude, 0.0, 0);
}

AirspaceInstance AirspaceInstance::with_obstacle(int altitude, int distance, bool value) const {
  if (altitude < 2 || altitude > max_altitude_ || distance < 0 || distance >= length_) {
    throw std::out_of_range("obstacle outside the obstacle layers");
  }
  AirspaceInstance copy = *this;
  copy.cells_[static_cast<std::size_t>(altitude - 2) * length_ + distance] = value ? 1 : 0;
  return copy;
}

std::size_t AirspaceInstance::obstacle_count() const {
  std::size_t n = 0;
  for (auto c : cells_) n += c;
  return n;
}

std::string AirspaceInstance::serialize() const {
  std::ostringstream out;
  char pbuf[64];
  std::snprintf(pbuf, sizeof pbuf, "%.17g", p_obs_);
  out << "airspace v1\n"
      << "length " << length_ << " maxAltitude " << max_altitude_ << " pObs " << pbuf << " seed "
      << seed_ << "\n";
  for (int a = 2; a <= max_altitude_; ++a) {
    std::string row(static_cast<std::size_t>(length_), '.');
    for (int d = 0; d < length_; ++d) {
      if (blocked(a, d)) row[static_cast<std::size_t>(d)] = '#';
    }
    out << row << "\n";
  }
  return out.str();
}

AirspaceInstance AirspaceInstance::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "airspace v1") {
    throw std::invalid_argument("not an airspace v1 file");
  }
  if (!std::getline(in, line)) throw std::invalid_argument("missing airspace header line");
  std::istringstream header(line);
  std::string k1, k2, k3, k4, pobs_text;
  int length = 0;
  int max_altitude = 0;
  std::uint64_t seed = 0;
  header >> k1 >> length >> k2 >> max_altitude >> k3 >> pobs_text >> k4 >> seed;
  if (!header || k1 != "length" || k2 != "maxAltitude" || k3 != "pObs" || k4 != "seed") {
    throw std::invalid_argument("malformed airspace header: " + line);
  }
  char* end = nullptr;
  const double p_obs = std::strtod(pobs_text.c_str(), &end);
  if (end != pobs_text.c_str() + pobs_text.size()) {
    throw std::invalid_argument("malformed pObs: " + pobs_text);
  }
  AirspaceInstance inst = generate(length, max_altitude, p_obs, seed);
  for (int a = 2; a <= max_altitude; ++a) {
    if (!std::getline(in, line)) throw std::invalid_argument("airspace body is truncated");
    if (line.size() != static_cast<std::size_t>(length)) {
      throw std::invalid_argument("airspace row has wrong width at altitude " + std::to_string(a));
    }
    for (int d = 0; d < length; ++d) {
      const char c = line[static_cast<std::size_t>(d)];
      if (c != '.' && c != '#') throw std::invalid_argument("unexpected character in airspace row");
      if ((c == '#') != inst.blocked(a, d)) {
        throw std::invalid_argument("airspace body does not match the grid regenerated from its header");
      }
    }
  }
  return inst;
}

std::vector<std::pair<int, int>> airspace_segment_cells(AirspaceState from, AirspaceState to) {
  std::vector<std::pair<int, int>> cells;
  const int span = to.d - from.d;
  if (span <= 0) {
    cells.emplace_back(from.a, from.d);
    cells.emplace_back(to.a, to.d);
    return cells;
  }
  const int rise = to.a - from.a;
  cells.reserve(static_cast<std::size_t>(span) + 1);
  for (int k = 0; k <= span; ++k) {
    // round-half-up of from.a + rise * k / span
    const int altitude = from.a + floor_div(2 * rise * k + span, 2 * span);
    cells.emplace_back(altitude, from.d + k);
  }
  return cells;
}

double collision_probability(int altitude, double p_obs) {
  if (altitude <= 0) return 0.0;
  return -std::expm1(static_cast<double>(altitude) * std::log1p(-p_obs));
}

int airspace_d_safe(AirspaceState state) { return std::max(state.a - 1, 0); }

SafetyVerdict airspace_f_safe(AirspaceState state) {
  return state.a <= 1 ? SafetyVerdict::kLikelySafe : SafetyVerdict::kUnknown;
}

AirspaceDomain::AirspaceDomain(AirspaceInstance instance)
    : instance_(std::move(instance)), stride_(instance_.max_altitude() + 1) {}

bool AirspaceDomain::segment_clear(AirspaceState from, AirspaceState to) const {
  const int span = to.d - from.d;
  if (span <= 0) return !instance_.blocked(from.a, from.d) && !instance_.blocked(to.a, to.d);
  const int rise = to.a - from.a;
  for (int k = 0; k <= span; ++k) {
    if (instance_.blocked(from.a + floor_div(2 * rise * k + span, 2 * span), from.d + k)) return false;
  }
  return true;
}

std::vector<AirspaceMove> AirspaceDomain::moves(AirspaceState s) const {
  std::vector<AirspaceMove> out;
  if (s.d >= instance_.length()) return out;
  constexpr AirspaceAction kActions[] = {kClimb, kKeep, kDescend};
  constexpr int kDelta[] = {+1, 0, -1};
  for (int i = 0; i < 3; ++i) {
    const int a2 = s.a + kDelta[i];
    if (a2 < 0 || a2 > instance_.max_altitude()) continue;
    const AirspaceState raw{s.d + a2, a2};
    if (!segment_clear(s, raw)) continue;
    out.push_back({kActions[i], {std::min(raw.d, instance_.length()), a2}});
  }
  return out;
}

Cost AirspaceDomain::h(AirspaceState s) const {
  if (s.d >= instance_.length()) return 0.0;
  return static_cast<Cost>(instance_.length() - s.d) / static_cast<Cost>(instance_.max_altitude());
}

std::vector<StateKey> AirspaceDomain::all_states() const {
  std::vector<StateKey> states;
  for (int d = 0; d <= instance_.length(); ++d) {
    for (int a = 0; a <= instance_.max_altitude(); ++a) {
      if (!instance_.blocked(a, d)) states.push_back(encode({d, a}));
    }
  }
  return states;
}

void AirspaceDomain::generate_successors(StateKey state, std::vector<Successor>& out) const {
  out.clear();
  for (const AirspaceMove& m : moves(decode(state))) out.push_back({m.action, encode(m.next), 1.0});
}

std::optional<ActionId> AirspaceDomain::identity_action(StateKey state) const {
  const AirspaceState s = decode(state);
  if (s.a == 0 && s.d < instance_.length()) return kKeep;
  return std::nullopt;
}

double AirspaceDomain::travel_distance(StateKey from, StateKey to) const {
  return static_cast<double>(decode(to).d - decode(from).d);
}

std::string AirspaceDomain::describe(StateKey state) const {
  const AirspaceState s = decode(state);
  return "(d=" + std::to_string(s.d) + ",a=" + std::to_string(s.a) + ")";
}

}  // namespace rtss::domains
