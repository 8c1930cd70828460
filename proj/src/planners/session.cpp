#include <stdexcept>

#include "common.hpp"

namespace rtss {

PlannerSession::PlannerSession(PlannerConfig config, const Domain& domain)
    : config_(std::move(config)), domain_(&domain), cache_(config_.cache_enabled) {
  config_.validate();
  if (config_.algorithm == Algorithm::kSafeLssLrta) {
    throw std::invalid_argument("the oracle planner needs a ground-truth dead-end set");
  }
}

PlannerSession::PlannerSession(PlannerConfig config, const Domain& domain, DeadEndCache truth)
    : config_(std::move(config)), domain_(&domain), cache_(std::move(truth)) {
  config_.validate();
}

IterationReport PlannerSession::step(StateKey agent) {
  switch (config_.algorithm) {
    case Algorithm::kLssLrta: return lss_lrta_iteration(graph_, agent, config_, *domain_, nullptr, &counters_);
    case Algorithm::kSafeLssLrta:
      return safe_lss_lrta_iteration(graph_, agent, config_, *domain_, cache_, &counters_);
    case Algorithm::kSafeRts: return safe_rts_iteration(graph_, agent, config_, *domain_, cache_, &counters_);
    case Algorithm::kRtfs: {
      IterationReport r = rtfs_iteration(graph_, agent, config_, config_.iteration_bound + carryover_, *domain_,
                                         cache_, strategies_, &counters_);
      carryover_ = config_.allow_budget_carryover ? r.unused_budget : 0;
      return r;
    }
  }
  throw std::logic_error("unhandled algorithm");
}

}  // namespace rtss
