#include "criteria.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "rtss/domains/airspace.hpp"
#include "rtss/domains/airspace_stats.hpp"
#include "rtss/harness/experiment.hpp"
#include "rtss/verify/suites.hpp"

#ifndef RTSS_DATA_DIR
#define RTSS_DATA_DIR "data"
#endif

namespace rtss::acceptance {

namespace {

using harness::ExperimentConfig;
using harness::Outcome;
using harness::RunRecord;

// Tolerances, pinned.
constexpr double kTable1ProbabilityTol = 0.03;  // absolute
constexpr double kTable1LengthTol = 0.20;       // relative
constexpr double kTable1RuntimeLimitS = 300.0;
constexpr int kTable1Samples = 20'000;
constexpr double kCollisionTol = 1e-12;
constexpr double kRankTol = 1e-12;
constexpr double kReexpansionLow = 0.002;
constexpr double kReexpansionHigh = 0.05;
constexpr double kAStarVelocityLow = 10.0;
constexpr double kAStarVelocityHigh = 16.0;
constexpr int kSweepSeedsRequired = 3;
constexpr int kSuiteSeeds = 100;

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

ExperimentConfig load(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::path(RTSS_DATA_DIR) / "experiments";
  std::ifstream in(dir / name);
  if (!in) throw std::runtime_error("missing experiment config " + name);
  std::ostringstream text;
  text << in.rdbuf();
  return ExperimentConfig::from_json(text.str(), dir.string());
}

double mean(const std::vector<double>& xs) {
  return xs.empty() ? std::nan("") : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

template <class Pred>
std::vector<double> column(const std::vector<RunRecord>& rows, Pred keep, double RunRecord::*field) {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (keep(r)) out.push_back(r.*field);
  }
  return out;
}

std::map<std::int64_t, double> mean_by_bound(const std::vector<RunRecord>& rows, const std::string& algorithm,
                                             double RunRecord::*field) {
  std::map<std::int64_t, std::vector<double>> groups;
  for (const auto& r : rows) {
    if (r.algorithm == algorithm) groups[r.iteration_bound].push_back(r.*field);
  }
  std::map<std::int64_t, double> out;
  for (const auto& [b, xs] : groups) out[b] = mean(xs);
  return out;
}

std::string series_text(const std::map<std::int64_t, double>& s) {
  std::string out;
  for (const auto& [b, v] : s) out += (out.empty() ? "" : " ") + std::to_string(b) + ":" + fmt(v);
  return out;
}

Verdict suite_subset(const std::string& prefix) {
  verify::SuiteOptions options;
  options.seeds = kSuiteSeeds;
  options.data_dir = RTSS_DATA_DIR;
  Verdict v{true, ""};
  for (const auto& r : verify::run_theorem_suite(options)) {
    if (r.name.rfind(prefix, 0) != 0) continue;
    v.pass = v.pass && r.passed();
    v.detail += (v.detail.empty() ? "" : "; ") + r.name + " " + std::to_string(r.cases - r.failures) + "/" +
                std::to_string(r.cases);
    if (!r.passed()) v.detail += " first failure: " + r.detail;
  }
  return v;
}

}  // namespace

Verdict table1_replication() {
  const auto t0 = std::chrono::steady_clock::now();
  const domains::AirspaceDomain domain(domains::AirspaceInstance::generate(10'000, 20, 0.05, 1));
  domains::StatsOptions options;
  options.samples_per_altitude = kTable1Samples;
  options.seed = 1;
  const auto rows = domains::airspace_stats(domain, options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  struct Row {
    int altitude;
    double probability;
    double length;
  };
  const Row table[] = {{3, 0.95, 4}, {10, 0.70, 14}, {19, 0.06, 32}};
  Verdict v{true, ""};
  for (const Row& t : table) {
    const auto& r = rows.at(static_cast<std::size_t>(t.altitude - 3));
    const bool p_ok = std::abs(r.safety_probability - t.probability) <= kTable1ProbabilityTol;
    // proof length as the number of path states, the length of a proof
    const bool l_ok = std::abs(r.mean_proof_states - t.length) <= kTable1LengthTol * t.length;
    v.pass = v.pass && p_ok && l_ok;
    v.detail += "a" + std::to_string(t.altitude) + " p=" + fmt(r.safety_probability) + (p_ok ? "" : "(out)") +
                " len=" + fmt(r.mean_proof_states) + (l_ok ? "" : "(out)") + "; ";
  }
  std::size_t peak = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].mean_failed_expansions > rows[peak].mean_failed_expansions) peak = i;
  }
  const int peak_alt = rows[peak].altitude;
  const bool rise_fall = peak > 0 && peak + 1 < rows.size() &&
                         rows[peak].mean_failed_expansions > rows.front().mean_failed_expansions &&
                         rows[peak].mean_failed_expansions > rows.back().mean_failed_expansions &&
                         peak_alt >= 15 && peak_alt <= 18;
  const bool fast = seconds <= kTable1RuntimeLimitS;
  v.pass = v.pass && rise_fall && fast;
  v.detail += "failed-proof expansions peak at a" + std::to_string(peak_alt) + (rise_fall ? "" : "(unexpected)") +
              "; runtime " + fmt(seconds, 3) + "s";
  return v;
}

Verdict collision_formula() {
  using Big = boost::multiprecision::cpp_dec_float_50;
  double worst = 0.0;
  int cases = 0;
  for (double p : {0.01, 0.05, 0.3}) {
    for (int a = 0; a <= 30; ++a) {
      const Big exact = Big(1) - boost::multiprecision::pow(Big(1) - Big(p), a);
      worst = std::max(worst, std::abs(static_cast<double>(exact - Big(domains::collision_probability(a, p)))));
      ++cases;
    }
  }
  return {worst <= kCollisionTol, std::to_string(cases) + " cases, max abs error " + fmt(worst, 3)};
}

Verdict theorem_suite() { return suite_subset("theorem"); }

Verdict soundness_suite() { return suite_subset("soundness"); }

Verdict dead_end_avoidance() {
  Verdict v{true, ""};
  for (const char* name : {"dead-ends-airspace-a10.json", "dead-ends-airspace-a14.json",
                           "dead-ends-airspace-a20.json", "racetrack-l.json"}) {
    const auto rows = harness::run_grid_serial(load(name));
    int reached = 0;
    int dead = 0;
    for (const auto& r : rows) {
      reached += r.outcome == Outcome::kGoalReached;
      dead += r.outcome == Outcome::kDeadEndEntered;
    }
    const bool ok = reached == static_cast<int>(rows.size()) && dead == 0;
    v.pass = v.pass && ok;
    v.detail += std::string(name) + " " + std::to_string(reached) + "/" + std::to_string(rows.size()) +
                " goal, " + std::to_string(dead) + " dead-end; ";
  }
  return v;
}

Verdict rtfs_vs_saferts_velocity() {
  const auto rows = harness::run_grid_serial(load("velocity-a20.json"));
  const auto rtfs = mean_by_bound(rows, "rtfs", &RunRecord::velocity);
  const auto safe = mean_by_bound(rows, "safe-rts", &RunRecord::velocity);
  const auto oracle = mean_by_bound(rows, "safe-lss-lrta", &RunRecord::velocity);
  bool ahead = true;
  for (const auto& [b, v] : rtfs) ahead = ahead && v >= safe.at(b);
  auto trend = [&](const std::map<std::int64_t, double>& s) {
    int inversions = 0;
    for (auto it = std::next(s.begin()); it != s.end(); ++it) inversions += it->second <= std::prev(it)->second;
    const double gap_first = oracle.begin()->second - s.begin()->second;
    const double gap_last = oracle.rbegin()->second - s.rbegin()->second;
    return inversions <= 1 && gap_last < gap_first;
  };
  const bool trends = trend(rtfs) && trend(safe);
  return {ahead && trends, std::string(ahead ? "" : "RTFS-0 behind at some bound; ") +
                               (trends ? "" : "trend toward oracle broken; ") + "rtfs " + series_text(rtfs) +
                               " | safe-rts " + series_text(safe) + " | oracle " + series_text(oracle)};
}

Verdict target_rank() {
  const auto rows = harness::run_grid_serial(load("racetrack-l.json"));
  auto finite = [](const std::string& algorithm) {
    return [algorithm](const RunRecord& r) { return r.algorithm == algorithm && std::isfinite(r.mean_target_open_rank); };
  };
  const double rtfs = mean(column(rows, finite("rtfs"), &RunRecord::mean_target_open_rank));
  const double safe = mean(column(rows, finite("safe-rts"), &RunRecord::mean_target_open_rank));
  const bool ok = std::abs(rtfs - 1.0) <= kRankTol && safe > 1.0;
  return {ok, "rtfs mean rank " + fmt(rtfs, 6) + " (by bound " +
                  series_text(mean_by_bound(rows, "rtfs", &RunRecord::mean_target_open_rank)) + "), safe-rts " +
                  fmt(safe, 6) + " (by bound " +
                  series_text(mean_by_bound(rows, "safe-rts", &RunRecord::mean_target_open_rank)) + ")"};
}

Verdict reexpansion_ratio() {
  const auto off = harness::run_grid_serial(load("reexpansion-cache-off.json"));
  const auto on = harness::run_grid_serial(load("reexpansion-cache-on.json"));
  const double ratio = mean(column(off, [](const RunRecord&) { return true; }, &RunRecord::dead_end_reexpansion_ratio));
  const bool ratio_ok = ratio >= kReexpansionLow && ratio <= kReexpansionHigh;
  int exceeded = 0;
  double sum_on = 0.0;
  double sum_off = 0.0;
  for (std::size_t i = 0; i < off.size(); ++i) {
    if (off[i].instance_id != on[i].instance_id || off[i].iteration_bound != on[i].iteration_bound) {
      return {false, "cache-on and cache-off grids are not paired"};
    }
    exceeded += on[i].total_expansions > off[i].total_expansions;
    sum_on += static_cast<double>(on[i].total_expansions);
    sum_off += static_cast<double>(off[i].total_expansions);
  }
  return {ratio_ok && exceeded == 0,
          "cache-off ratio " + fmt(ratio) + (ratio_ok ? "" : "(out)") + "; cache-on above cache-off on " +
              std::to_string(exceeded) + "/" + std::to_string(off.size()) + " pairs; mean total on " +
              fmt(sum_on / static_cast<double>(on.size()), 6) + " vs off " +
              fmt(sum_off / static_cast<double>(off.size()), 6)};
}

Verdict perfect_agent_velocity() {
  const auto rows = harness::run_grid_serial(load("offline-astar.json"));
  const double v = mean(column(rows, [](const RunRecord& r) { return r.outcome == Outcome::kGoalReached; },
                               &RunRecord::velocity));
  const bool ok = rows.size() == 5 && v >= kAStarVelocityLow && v <= kAStarVelocityHigh;
  return {ok, "offline A* mean velocity " + fmt(v) + " over " + std::to_string(rows.size()) + " instances"};
}

Verdict exploration_sweep() {
  Verdict v{true, ""};
  for (const char* name : {"sweep-p0.01.json", "sweep-p0.05.json"}) {
    const auto rows = harness::run_grid_serial(load(name));
    const bool complete = std::all_of(rows.begin(), rows.end(), [](const RunRecord& r) {
      return r.outcome == Outcome::kGoalReached;
    });
    // per seed: mean velocity over the bound grid at ratio 0.5
    std::map<std::uint64_t, std::map<std::string, std::vector<double>>> by_seed;
    for (const auto& r : rows) {
      if (r.exploration_ratio == 0.5) by_seed[r.seed][r.evaluator].push_back(r.velocity);
    }
    int wins = 0;
    for (auto& [seed, evals] : by_seed) wins += mean(evals["wastar:1.1"]) >= mean(evals["astar"]);
    const bool ok = complete && by_seed.size() == 5 && wins >= kSweepSeedsRequired;
    v.pass = v.pass && ok;
    v.detail += std::string(name) + (complete ? " complete" : " INCOMPLETE") + ", wastar:1.1 >= astar on " +
                std::to_string(wins) + "/" + std::to_string(by_seed.size()) + " seeds; ";
  }
  return v;
}

Verdict determinism() {
  Verdict v{true, ""};
  for (const char* name : {"velocity-a20.json", "racetrack-l.json", "sweep-p0.05.json"}) {
    const auto config = load(name);
    const std::string first = harness::to_csv(harness::run_grid_serial(config));
    const std::string second = harness::to_csv(harness::run_grid_serial(config));
    const std::string parallel = harness::to_csv(harness::run_grid(config, 4));
    const bool ok = first == second && first == parallel;
    v.pass = v.pass && ok;
    v.detail += std::string(name) + (ok ? " identical" : " DIFFERS") + " (" + std::to_string(first.size()) + " bytes); ";
  }
  const domains::AirspaceDomain domain(domains::AirspaceInstance::generate(2000, 20, 0.05, 3));
  domains::StatsOptions options;
  options.samples_per_altitude = 500;
  options.seed = 3;
  const bool stats_ok = harness::stats_to_csv(domains::airspace_stats_serial(domain, options)) ==
                        harness::stats_to_csv(domains::airspace_stats(domain, options));
  v.pass = v.pass && stats_ok;
  v.detail += std::string("stats serial vs parallel ") + (stats_ok ? "identical" : "DIFFERS");
  return v;
}

}  // namespace rtss::acceptance
