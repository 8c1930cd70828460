#include "rtss/harness/episode.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rtss::harness {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kGoalReached: return "GoalReached";
    case Outcome::kDeadEndEntered: return "DeadEndEntered";
    case Outcome::kTerminated: return "Terminated";
    case Outcome::kFailure: return "Failure";
    case Outcome::kMaxIterationsExceeded: return "MaxIterationsExceeded";
    case Outcome::kError: return "Error";
  }
  return "?";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool entered_dead_end(const Domain& domain, StateKey state, const domains::GroundTruth* truth) {
  if (domain.is_goal(state)) return false;
  if (truth != nullptr) return truth->is_dead_end(state);
  return successors_of(domain, state).empty();
}

void finish_motion(const Domain& domain, StateKey start, EpisodeResult& result) {
  RunRecord& rec = result.record;
  rec.gat = static_cast<double>(result.actions.size());
  rec.velocity = rec.gat > 0 ? domain.travel_distance(start, result.trajectory.back()) / rec.gat : 0.0;
}

}  // namespace

EpisodeResult simulate_episode(PlannerSession& session, const Domain& domain, StateKey start,
                               const EpisodeOptions& options) {
  const PlannerConfig& config = session.config();
  EpisodeResult result;
  RunRecord& rec = result.record;
  rec.algorithm = std::string(to_string(config.algorithm));
  rec.iteration_bound = config.iteration_bound;
  const bool rtfs = config.algorithm == Algorithm::kRtfs;
  rec.exploration_ratio = rtfs ? config.exploration_ratio : kNaN;
  rec.evaluator = rtfs ? config.evaluator.name() : NodeEvaluator::f_cost().name();
  result.trajectory.push_back(start);

  StateKey agent = start;
  std::optional<Outcome> outcome;
  if (domain.is_goal(agent)) outcome = Outcome::kGoalReached;
  double rank_sum = 0.0;
  std::int64_t rank_count = 0;

  while (!outcome) {
    if (rec.iterations >= options.max_iterations) {
      outcome = Outcome::kMaxIterationsExceeded;
      break;
    }
    IterationReport report = session.step(agent);
    ++rec.iterations;
    rec.total_expansions += report.expansions();
    rec.proof_expansions += report.expansions_proof;
    if (report.target_open_rank) {
      rank_sum += *report.target_open_rank;
      ++rank_count;
    }
    if (report.status == IterationStatus::kTerminated) outcome = Outcome::kTerminated;
    if (report.status == IterationStatus::kFailure) outcome = Outcome::kFailure;

    for (ActionId action : report.committed_actions) {
      const std::optional<Successor> next = apply_action(domain, agent, action);
      if (!next) throw std::logic_error("planner committed an action that is not applicable");
      agent = next->state;
      result.actions.push_back(action);
      result.trajectory.push_back(agent);
      if (entered_dead_end(domain, agent, options.truth)) {
        ++result.dead_end_entries;
        result.dead_end = agent;
        outcome = Outcome::kDeadEndEntered;
        break;
      }
      if (domain.is_goal(agent)) {
        outcome = Outcome::kGoalReached;
        break;
      }
    }
    if (options.keep_reports) result.reports.push_back(std::move(report));
  }

  rec.outcome = *outcome;
  finish_motion(domain, start, result);
  const SearchCounters& counters = session.counters();
  result.avoided_reexpansions = counters.avoided_reexpansions;
  result.dead_end_reexpansions = counters.dead_end_reexpansions;
  rec.dead_end_reexpansion_ratio =
      rec.total_expansions > 0
          ? static_cast<double>(counters.dead_end_reexpansions) / static_cast<double>(rec.total_expansions)
          : 0.0;
  rec.mean_target_open_rank = rank_count > 0 ? rank_sum / static_cast<double>(rank_count) : kNaN;
  return result;
}

EpisodeResult simulate_episode(const PlannerConfig& config, const Domain& domain, StateKey start,
                               const EpisodeOptions& options) {
  if (config.algorithm == Algorithm::kSafeLssLrta) {
    if (options.truth == nullptr) throw std::invalid_argument("the oracle planner needs ground truth");
    PlannerSession session(config, domain, domains::dead_end_oracle(domain, *options.truth));
    return simulate_episode(session, domain, start, options);
  }
  PlannerSession session(config, domain);
  return simulate_episode(session, domain, start, options);
}

EpisodeResult offline_astar_episode(const Domain& domain, StateKey start) {
  EpisodeResult result;
  RunRecord& rec = result.record;
  rec.algorithm = "offline-astar";
  rec.exploration_ratio = kNaN;
  rec.evaluator = NodeEvaluator::f_cost().name();
  rec.mean_target_open_rank = kNaN;
  result.trajectory.push_back(start);
  if (const std::optional<Plan> plan = offline_astar(domain, start)) {
    result.actions = plan->actions;
    result.trajectory = plan->states;
    rec.outcome = Outcome::kGoalReached;
  } else {
    rec.outcome = Outcome::kFailure;
  }
  finish_motion(domain, start, result);
  return result;
}

double measure_reexpansion_ratio(const PlannerConfig& config, const Domain& domain, StateKey start,
                                 const EpisodeOptions& options) {
  if (config.cache_enabled) throw std::invalid_argument("re-expansions are measured with the cache off");
  return simulate_episode(config, domain, start, options).record.dead_end_reexpansion_ratio;
}

bool audit_replay(const Domain& domain, StateKey start, const std::vector<ActionId>& actions,
                  const domains::GroundTruth* truth) {
  StateKey at = start;
  for (ActionId action : actions) {
    const std::optional<Successor> next = apply_action(domain, at, action);
    if (!next) return false;
    at = next->state;
    if (entered_dead_end(domain, at, truth)) return false;
  }
  return domain.is_goal(at);
}

}  // namespace rtss::harness
