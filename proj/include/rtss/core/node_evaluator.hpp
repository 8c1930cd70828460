#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rtss/core/search_node.hpp"

namespace rtss {

/// The fields an evaluator may look at. Shared by goal-search nodes and proof
/// search records so that both orderings come from one definition.
struct EvalKey {
  Cost g = 0.0;
  Cost h = 0.0;
  int d_safe = 0;
  std::uint64_t seq = 0;
};

inline EvalKey eval_key(const SearchNode& node) {
  return {node.g, node.h, node.d_safe, node.open_seq};
}

/// Open-list ordering.
///
///  - FCost: lowest g + h; ties toward larger g, then first inserted.
///  - WeightedF(w): lowest g + w*h with the same tie-breaking; w = 1 is FCost.
///  - GreedyH: lowest h; ties toward larger g, then first inserted.
///  - SafetyDistance: lowest d_safe; ties toward lower h, then first inserted.
class NodeEvaluator {
 public:
  enum class Kind : std::uint8_t { kFCost, kWeightedF, kGreedyH, kSafetyDistance };

  static NodeEvaluator f_cost() { return NodeEvaluator(Kind::kFCost, 1.0); }
  static NodeEvaluator weighted_f(double weight);
  static NodeEvaluator greedy_h() { return NodeEvaluator(Kind::kGreedyH, 1.0); }
  static NodeEvaluator safety_distance() { return NodeEvaluator(Kind::kSafetyDistance, 1.0); }

  /// Accepts the command-line vocabulary: `astar`, `wastar:W`, `greedy`, `dsafe`.
  static NodeEvaluator parse(std::string_view text);

  Kind kind() const { return kind_; }
  double weight() const { return weight_; }

  /// Inverse of parse().
  std::string name() const;

  /// True when `a` must be expanded before `b`.
  bool precedes(const EvalKey& a, const EvalKey& b) const {
    switch (kind_) {
      case Kind::kFCost: return by_primary(a.g + a.h, b.g + b.h, a, b);
      case Kind::kWeightedF: return by_primary(a.g + weight_ * a.h, b.g + weight_ * b.h, a, b);
      case Kind::kGreedyH: return by_primary(a.h, b.h, a, b);
      case Kind::kSafetyDistance:
        if (a.d_safe != b.d_safe) return a.d_safe < b.d_safe;
        if (a.h != b.h) return a.h < b.h;
        return a.seq < b.seq;
    }
    return false;
  }

  bool precedes(const SearchNode& a, const SearchNode& b) const {
    return precedes(eval_key(a), eval_key(b));
  }

  friend bool operator==(const NodeEvaluator&, const NodeEvaluator&) = default;

 private:
  NodeEvaluator(Kind kind, double weight) : kind_(kind), weight_(weight) {}

  static bool by_primary(Cost ka, Cost kb, const EvalKey& a, const EvalKey& b) {
    if (ka != kb) return ka < kb;
    if (a.g != b.g) return a.g > b.g;
    return a.seq < b.seq;
  }

  Kind kind_;
  double weight_;
};

}  // namespace rtss
