#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>

namespace rtss {

using Cost = double;

/// Strictly greater than every finite cost; marks states proven unable to reach
/// the search frontier.
inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::infinity();

using ActionId = std::int32_t;

/// Canonical, injective encoding of a domain state. Domains own the encoding.
struct StateKey {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(StateKey, StateKey) = default;
};

struct StateKeyHash {
  std::size_t operator()(StateKey key) const noexcept {
    // splitmix64 finalizer; keys from the domains are dense small integers
    std::uint64_t z = key.value + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

}  // namespace rtss

template <>
struct std::hash<rtss::StateKey> : rtss::StateKeyHash {};
