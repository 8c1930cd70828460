#include <algorithm>
#include <unordered_map>

#include "rtss/safety/safety.hpp"

namespace rtss {

namespace {

struct ProofRecord {
  StateKey state;
  std::uint32_t parent;
  EvalKey key;
};

constexpr std::uint32_t kNoParent = 0xffffffffu;

std::vector<StateKey> trace_back(const std::vector<ProofRecord>& records, std::uint32_t at) {
  std::vector<StateKey> path;
  for (; at != kNoParent; at = records[at].parent) path.push_back(records[at].state);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::int64_t proof_expansions(const ProofResult& result) {
  return std::visit([](const auto& r) { return r.expansions; }, result);
}

ProofResult prove_safety(StateKey target, ExpansionBudget& budget, const Domain& domain,
                         const DeadEndCache& cache, SearchCounters* counters,
                         const ProofOptions& options) {
  if (is_safety_anchor(domain, target)) return ProofProven{{target}, 0};

  const NodeEvaluator order = NodeEvaluator::safety_distance();
  std::vector<ProofRecord> records;
  std::unordered_map<StateKey, std::uint32_t> seen;
  std::vector<std::uint32_t> heap;
  // std heaps keep the largest element on top
  auto lower_priority = [&](std::uint32_t a, std::uint32_t b) {
    return order.precedes(records[b].key, records[a].key);
  };
  std::uint64_t seq = 0;
  auto add = [&](StateKey state, std::uint32_t parent) {
    const auto idx = static_cast<std::uint32_t>(records.size());
    records.push_back({state, parent, {0.0, domain.heuristic(state), domain.safety_distance(state), seq++}});
    seen.emplace(state, idx);
    heap.push_back(idx);
    std::push_heap(heap.begin(), heap.end(), lower_priority);
  };

  auto is_free = [&](StateKey state) {
    if (options.free_lss == nullptr) return false;
    const auto id = options.free_lss->find(state);
    return id && options.free_lss->in_lss(*id) && options.free_lss->node(*id).expanded;
  };

  add(target, kNoParent);
  std::vector<StateKey> visited;
  std::int64_t charged = 0;
  std::vector<Successor> successors;

  while (!heap.empty()) {
    const std::uint32_t top = heap.front();
    const StateKey state = records[top].state;
    const bool free = is_free(state);
    if (!free && budget.exhausted()) return ProofBudgetOut{charged};

    std::pop_heap(heap.begin(), heap.end(), lower_priority);
    heap.pop_back();
    if (!free) {
      ++budget.used;
      ++charged;
      if (counters != nullptr) counters->record_expansion(state, &cache);
    }

    if (is_safety_anchor(domain, state)) return ProofProven{trace_back(records, top), charged};
    visited.push_back(state);

    domain.generate_successors(state, successors);
    for (const Successor& s : successors) {
      if (cache.blocks(s.state)) {
        if (counters != nullptr) ++counters->avoided_reexpansions;
        continue;
      }
      if (seen.contains(s.state)) continue;
      add(s.state, top);
    }
  }
  return ProofExhausted{std::move(visited), charged};
}

}  // namespace rtss
