#pragma once

#include <cstdint>
#include <string_view>

namespace rtss {

enum class SafetyStatus : std::uint8_t {
  kUnknown,
  kExplicitlySafe,  // certified by the safety predicate (or a goal)
  kImplicitlySafe,  // has a discovered path to a safe state
  kDeadEnd,         // proven unable to reach a goal
};

constexpr bool is_safe(SafetyStatus status) {
  return status == SafetyStatus::kExplicitlySafe || status == SafetyStatus::kImplicitlySafe;
}

constexpr std::string_view to_string(SafetyStatus status) {
  switch (status) {
    case SafetyStatus::kUnknown: return "unknown";
    case SafetyStatus::kExplicitlySafe: return "explicitly-safe";
    case SafetyStatus::kImplicitlySafe: return "implicitly-safe";
    case SafetyStatus::kDeadEnd: return "dead-end";
  }
  return "?";
}

}  // namespace rtss
