#include "rtss/domains/airspace_stats.hpp"

#include <algorithm>
#include <stdexcept>

#include "rtss/safety/safety.hpp"
#include "rtss/domains/splitmix64.hpp"

namespace rtss::domains {

namespace {

void check(const AirspaceDomain& domain, const StatsOptions& options) {
  if (options.samples_per_altitude < 1) throw std::invalid_argument("samples per altitude must be >= 1");
  if (domain.instance().length() < 2) throw std::invalid_argument("instance too short to sample");
}

AltitudeStats summarize(int altitude, const std::vector<ProofSample>& samples) {
  AltitudeStats row;
  row.altitude = altitude;
  row.samples = static_cast<int>(samples.size());
  std::int64_t transitions = 0;
  for (const ProofSample& s : samples) {
    if (s.proven) {
      ++row.proven;
      transitions += s.transitions;
      row.success_expansions += s.expansions;
    } else {
      row.failed_expansions += s.expansions;
    }
  }
  const int failed = row.samples - row.proven;
  row.states = transitions + row.proven;
  row.safety_probability = static_cast<double>(row.proven) / row.samples;
  if (row.proven > 0) {
    row.mean_proof_transitions = static_cast<double>(transitions) / row.proven;
    row.mean_proof_states = static_cast<double>(row.states) / row.proven;
    row.mean_success_expansions = static_cast<double>(row.success_expansions) / row.proven;
  }
  if (failed > 0) row.mean_failed_expansions = static_cast<double>(row.failed_expansions) / failed;
  return row;
}

}  // namespace

int stats_sampling_margin(const AirspaceInstance& instance) {
  return std::min(instance.length() / 2, 50 * instance.max_altitude());
}

ProofSample airspace_proof_sample(const AirspaceDomain& domain, const StatsOptions& options,
                                  int altitude, int index) {
  const AirspaceInstance& inst = domain.instance();
  const auto range = static_cast<std::uint64_t>(inst.length() - stats_sampling_margin(inst));
  SplitMix64 rng(splitmix64_hash(options.seed ^ (static_cast<std::uint64_t>(altitude) << 40) ^
                                 static_cast<std::uint64_t>(index)));
  int d = static_cast<int>(rng.next_below(range));
  // rejection sampling over free cells; a fully blocked row falls back to the last draw
  for (int tries = 0; tries < 1000 && inst.blocked(altitude, d); ++tries) {
    d = static_cast<int>(rng.next_below(range));
  }
  ExpansionBudget budget =
      options.proof_budget > 0 ? ExpansionBudget{options.proof_budget, 0} : ExpansionBudget::unlimited();
  const DeadEndCache no_cache(false);
  const ProofResult result = prove_safety(domain.encode({d, altitude}), budget, domain, no_cache);
  ProofSample sample;
  sample.expansions = proof_expansions(result);
  if (const auto* proven = std::get_if<ProofProven>(&result)) {
    sample.proven = true;
    sample.transitions = static_cast<int>(proven->path.size()) - 1;
  }
  return sample;
}

std::vector<AltitudeStats> airspace_stats_serial(const AirspaceDomain& domain, const StatsOptions& options) {
  check(domain, options);
  std::vector<AltitudeStats> table;
  for (int a = options.first_altitude; a <= domain.instance().max_altitude(); ++a) {
    std::vector<ProofSample> samples(static_cast<std::size_t>(options.samples_per_altitude));
    for (int i = 0; i < options.samples_per_altitude; ++i) {
      samples[static_cast<std::size_t>(i)] = airspace_proof_sample(domain, options, a, i);
    }
    table.push_back(summarize(a, samples));
  }
  return table;
}

std::vector<AltitudeStats> airspace_stats(const AirspaceDomain& domain, const StatsOptions& options) {
  check(domain, options);
  const int first = options.first_altitude;
  const int altitudes = std::max(domain.instance().max_altitude() - first + 1, 0);
  const int per = options.samples_per_altitude;
  const std::int64_t total = static_cast<std::int64_t>(altitudes) * per;
  std::vector<ProofSample> samples(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t k = 0; k < total; ++k) {
    samples[static_cast<std::size_t>(k)] =
        airspace_proof_sample(domain, options, first + static_cast<int>(k / per), static_cast<int>(k % per));
  }
  std::vector<AltitudeStats> table;
  for (int i = 0; i < altitudes; ++i) {
    const auto begin = samples.begin() + static_cast<std::ptrdiff_t>(i) * per;
    table.push_back(summarize(first + i, std::vector<ProofSample>(begin, begin + per)));
  }
  return table;
}

}  // namespace rtss::domains
