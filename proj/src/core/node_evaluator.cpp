#include "rtss/core/node_evaluator.hpp"

#include <cstdlib>
#include <cstdio>
#include <stdexcept>

#include "rtss/core/domain.hpp"

namespace rtss {

NodeEvaluator NodeEvaluator::weighted_f(double weight) {
  if (!(weight >= 1.0)) throw std::invalid_argument("weighted-f weight must be >= 1");
  return NodeEvaluator(Kind::kWeightedF, weight);
}

NodeEvaluator NodeEvaluator::parse(std::string_view text) {
  if (text == "astar") return f_cost();
  if (text == "greedy") return greedy_h();
  if (text == "dsafe") return safety_distance();
  constexpr std::string_view prefix = "wastar:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string number(text.substr(prefix.size()));
    char* end = nullptr;
    const double w = std::strtod(number.c_str(), &end);
    if (number.empty() || end != number.c_str() + number.size()) {
      throw std::invalid_argument("malformed weight in evaluator '" + std::string(text) + "'");
    }
    return weighted_f(w);
  }
  throw std::invalid_argument("unknown evaluator '" + std::string(text) + "'");
}

std::string NodeEvaluator::name() const {
  switch (kind_) {
    case Kind::kFCost: return "astar";
    case Kind::kGreedyH: return "greedy";
    case Kind::kSafetyDistance: return "dsafe";
    case Kind::kWeightedF: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "wastar:%g", weight_);
      return buf;
    }
  }
  return "?";
}

std::optional<Successor> apply_action(const Domain& domain, StateKey state, ActionId action) {
  std::vector<Successor> succ;
  domain.generate_successors(state, succ);
  for (const Successor& s : succ) {
    if (s.action == action) return s;
  }
  return std::nullopt;
}

}  // namespace rtss
