#pragma once

#include "rtss/planners/planners.hpp"

namespace rtss::detail {

/// Appends the actions from the root toward `target` (one, or all of them).
void commit_toward(const SearchGraph& graph, NodeId target, CommitMode mode, IterationReport& report);

/// Commits the whole path to an expanded goal.
void commit_goal(const SearchGraph& graph, NodeId goal, IterationReport& report);

/// Commits to the safe-toward-best target, else the identity action at the
/// root, else marks the iteration terminated.
void commit_safe(const SearchGraph& graph, const std::optional<TargetChoice>& choice,
                 const PlannerConfig& config, const Domain& domain, IterationReport& report);

}  // namespace rtss::detail
