#pragma once

#include <cstddef>
#include <unordered_set>

#include "rtss/core/types.hpp"

namespace rtss {

/// One "known dead-end" bit per state, owned by a single episode.
///
/// Flags are only ever added. When the cache is disabled the flags are still
/// recorded, so instrumentation can count re-expansions of known dead-ends,
/// but blocks() never prunes anything.
class DeadEndCache {
 public:
  explicit DeadEndCache(bool enabled = true) : enabled_(enabled) {}

  bool enabled() const { return enabled_; }
  bool contains(StateKey state) const { return flags_.contains(state); }

  /// Whether search must refuse to generate `state`.
  bool blocks(StateKey state) const { return enabled_ && contains(state); }

  /// Returns true if the flag is new.
  bool flag(StateKey state) { return flags_.insert(state).second; }

  std::size_t size() const { return flags_.size(); }

 private:
  bool enabled_;
  std::unordered_set<StateKey> flags_;
};

}  // namespace rtss
