#include <algorithm>
#include <deque>
#include <memory>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rtss/core/best_first.hpp"
#include "rtss/domains/airspace.hpp"
#include "rtss/domains/explicit_graph.hpp"
#include "rtss/domains/ground_truth.hpp"
#include "rtss/domains/splitmix64.hpp"
#include "rtss/planners/planners.hpp"
#include "rtss/safety/safety.hpp"
#include "rtss/verify/suites.hpp"

namespace rtss::verify {

namespace {

using domains::SplitMix64;

struct SmallCase {
  std::string label;
  std::unique_ptr<Domain> domain;
  StateKey root;
  std::int64_t lss_budget = 0;
  std::int64_t growth = 0;
  std::int64_t planner_bound = 0;
};

SmallCase make_case(std::uint64_t seed, int index) {
  SplitMix64 rng(seed);
  SmallCase c;
  c.lss_budget = 5 + static_cast<std::int64_t>(rng.next_below(40));
  c.growth = 1 + static_cast<std::int64_t>(rng.next_below(20));
  c.planner_bound = 10 + static_cast<std::int64_t>(rng.next_below(30));
  std::ostringstream label;
  if (index % 2 == 0) {
    const int length = 20 + static_cast<int>(rng.next_below(31));
    const int max_alt = 3 + static_cast<int>(rng.next_below(6));
    const double p = 0.1 * static_cast<double>(1 + rng.next_below(3));
    auto domain = std::make_unique<domains::AirspaceDomain>(
        domains::AirspaceInstance::generate(length, max_alt, p, rng.next()));
    domains::AirspaceState root{0, 0};
    for (int tries = 0; tries < 50; ++tries) {
      const domains::AirspaceState s{static_cast<int>(rng.next_below(static_cast<std::uint64_t>(length / 3 + 1))),
                                     2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_alt - 1)))};
      if (!domain->instance().blocked(s.a, s.d)) {
        root = s;
        break;
      }
    }
    c.root = domain->encode(root);
    label << "airspace " << length << "x" << max_alt << " p=" << p << " root " << domain->describe(c.root);
    c.domain = std::move(domain);
  } else {
    const std::size_t n = 20 + static_cast<std::size_t>(rng.next_below(181));
    c.domain = std::make_unique<domains::ExplicitGraph>(domains::ExplicitGraph::random_dag(n, rng.next()));
    c.root = StateKey{0};
    label << "dag n=" << n;
  }
  label << " budget " << c.lss_budget;
  c.label = label.str();
  return c;
}

SearchGraph build_lss(const SmallCase& c, std::int64_t budget) {
  SearchGraph graph;
  graph.begin_iteration(c.root, *c.domain);
  ExpansionBudget b{budget, 0};
  expand_best_first(graph, NodeEvaluator::f_cost(), b, *c.domain, false);
  return graph;
}

std::vector<NodeId> closed_nodes(const SearchGraph& g) {
  std::vector<NodeId> out;
  for (NodeId id : g.lss()) {
    if (g.node(id).expanded) out.push_back(id);
  }
  return out;
}

/// Closed nodes with a successor path through closed nodes only to a node
/// that was already known safe.
std::unordered_set<NodeId> provable_inside(const SearchGraph& g) {
  std::unordered_set<NodeId> reach;
  std::deque<NodeId> work;
  for (NodeId id : g.lss()) {
    if (g.node(id).safe()) work.push_back(id);
  }
  std::unordered_set<NodeId> seen(work.begin(), work.end());
  while (!work.empty()) {
    const NodeId id = work.front();
    work.pop_front();
    for (const InEdge& e : g.node(id).predecessors) {
      if (!g.in_lss(e.node) || !g.node(e.node).expanded || seen.contains(e.node)) continue;
      seen.insert(e.node);
      reach.insert(e.node);
      work.push_back(e.node);
    }
  }
  for (NodeId id : g.lss()) {
    if (g.node(id).expanded && g.node(id).safe()) reach.insert(id);
  }
  return reach;
}

std::unordered_set<StateKey> safe_states(const SearchGraph& g) {
  std::unordered_set<StateKey> out;
  for (NodeId id = 0; id < g.store_size(); ++id) {
    if (g.node(id).safe()) out.insert(g.node(id).state);
  }
  return out;
}

class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }
  void check(bool ok, const std::string& what) {
    ++result_.cases;
    if (!ok) {
      if (result_.failures == 0) result_.detail = what;
      ++result_.failures;
    }
  }
  CheckResult result() const { return result_; }

 private:
  CheckResult result_;
};

std::int64_t certification_cost(const SearchGraph& base, const std::vector<StateKey>& targets, const Domain& domain) {
  SearchGraph g = base;
  propagate_safety(g, {}, domain);
  const DeadEndCache off(false);
  ProofOptions opts;
  opts.free_lss = &g;
  std::int64_t total = 0;
  for (StateKey s : targets) {
    const auto id = g.find(s);
    if (id && g.node(*id).safe()) continue;
    ExpansionBudget b = ExpansionBudget::unlimited();
    total += proof_expansions(prove_safety(s, b, domain, off, nullptr, opts));
  }
  return total;
}

}  // namespace

std::vector<CheckResult> run_theorem_suite(const SuiteOptions& options) {
  Tally t1("theorem1-zero-expansion-proofs-inside-closed-lss");
  Tally t3("theorem3-frontier-proof-strictly-shorter");
  Tally t4("theorem4-identical-marked-sets");
  Tally t5("theorem5-proof-expansions-non-increasing");
  Tally safe_sound("soundness-marked-safe-subset-of-true-safe");
  Tally dead_sound("soundness-flagged-dead-ends-outside-true-safe");

  for (int i = 0; i < options.seeds; ++i) {
    const std::uint64_t seed = domains::splitmix64_hash(options.base_seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(i));
    const SmallCase c = make_case(seed, i);
    const Domain& domain = *c.domain;
    const domains::GroundTruth truth = domains::true_safe_set(domain, {c.root});
    const SearchGraph lss = build_lss(c, c.lss_budget);

    std::unordered_map<StateKey, std::optional<std::size_t>> proof_len;
    auto oracle = [&](StateKey s) {
      auto it = proof_len.find(s);
      if (it == proof_len.end()) it = proof_len.emplace(s, domains::optimal_proof_oracle(domain, s)).first;
      return it->second;
    };

    // Theorem 1
    {
      const auto inside = provable_inside(lss);
      SearchGraph g = lss;
      propagate_safety(g, {}, domain);
      for (NodeId id : inside) {
        t1.check(g.node(id).safe(), c.label + ": " + domain.describe(g.node(id).state) + " not marked");
      }
      // Theorem 3
      std::optional<std::size_t> best_open;
      for (NodeId id : lss.open_items()) {
        const auto len = oracle(lss.node(id).state);
        if (len && (!best_open || *len < *best_open)) best_open = len;
      }
      for (NodeId id : closed_nodes(lss)) {
        if (inside.contains(id)) continue;
        const auto len = oracle(lss.node(id).state);
        if (!len) continue;
        t3.check(best_open && *best_open < *len,
                 c.label + ": no open node beats " + domain.describe(lss.node(id).state));
      }
    }

    // Theorem 4: proof(x) = tree path x..y followed by proof*(y)
    {
      int pairs = 0;
      for (NodeId y : lss.open_items()) {
        if (pairs >= 5) break;
        const auto proof_y = domains::optimal_proof_path(domain, lss.node(y).state);
        if (!proof_y) continue;
        const std::vector<NodeId> chain = node_path_to(lss, y);
        if (chain.size() < 2) continue;
        const std::size_t from = chain.size() >= 3 ? chain.size() - 3 : 0;
        ProofProven py{*proof_y, 0};
        ProofProven px;
        for (std::size_t k = from; k + 1 < chain.size(); ++k) px.path.push_back(lss.node(chain[k]).state);
        px.path.insert(px.path.end(), proof_y->begin(), proof_y->end());
        SearchGraph both = lss;
        SearchGraph only_y = lss;
        const ProofProven two[] = {px, py};
        propagate_safety(both, two, domain);
        propagate_safety(only_y, std::span<const ProofProven>(&py, 1), domain);
        t4.check(safe_states(both) == safe_states(only_y),
                 c.label + ": marked sets differ for frontier node " + domain.describe(lss.node(y).state));
        ++pairs;
      }
    }

    // Theorem 5
    {
      std::vector<StateKey> provable;
      for (NodeId id : lss.lss()) {
        if (oracle(lss.node(id).state)) provable.push_back(lss.node(id).state);
      }
      SearchGraph grown = lss;
      ExpansionBudget more{c.growth, 0};
      expand_best_first(grown, NodeEvaluator::f_cost(), more, domain, false);
      const std::int64_t before = certification_cost(lss, provable, domain);
      const std::int64_t after = certification_cost(grown, provable, domain);
      t5.check(after <= before, c.label + ": " + std::to_string(after) + " > " + std::to_string(before));
    }

    // Soundness over whole episodes of both safety planners and one RTFS-0
    // allocation on the fixed LSS.
    {
      auto audit = [&](const SearchGraph& g, const DeadEndCache& cache, const std::string& who) {
        for (NodeId id = 0; id < g.store_size(); ++id) {
          const SearchNode& n = g.node(id);
          if (n.safe()) safe_sound.check(truth.is_safe(n.state), c.label + " " + who + ": " + domain.describe(n.state));
          if (n.safety == SafetyStatus::kDeadEnd || cache.contains(n.state)) {
            dead_sound.check(!truth.is_safe(n.state), c.label + " " + who + ": " + domain.describe(n.state));
          }
        }
      };
      for (Algorithm algorithm : {Algorithm::kSafeRts, Algorithm::kRtfs}) {
        PlannerConfig config;
        config.algorithm = algorithm;
        config.iteration_bound = c.planner_bound;
        PlannerSession session(config, domain);
        StateKey agent = c.root;
        for (int it = 0; it < 40 && !domain.is_goal(agent); ++it) {
          const IterationReport r = session.step(agent);
          if (r.status == IterationStatus::kTerminated || r.status == IterationStatus::kFailure) break;
          for (ActionId a : r.committed_actions) agent = apply_action(domain, agent, a)->state;
        }
        audit(session.graph(), session.cache(), std::string(to_string(algorithm)));
      }
      SearchGraph g = lss;
      DeadEndCache cache;
      ExpansionBudget b{c.lss_budget, 0};
      const auto proofs = allocate_proofs_rtfs0(g, b, domain, cache);
      std::vector<ProofProven> proven;
      for (const auto& p : proofs) {
        if (const auto* pp = std::get_if<ProofProven>(&p)) proven.push_back(*pp);
      }
      dijkstra_h_update(g);
      propagate_dead_ends(g, cache, domain);
      propagate_safety(g, proven, domain);
      audit(g, cache, "rtfs0-allocation");
    }
  }
  return {t1.result(), t3.result(), t4.result(), t5.result(), safe_sound.result(), dead_sound.result()};
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed(); });
}

}  // namespace rtss::verify
