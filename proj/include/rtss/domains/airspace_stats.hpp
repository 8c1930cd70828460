#pragma once

#include <cstdint>
#include <vector>

#include "rtss/domains/airspace.hpp"

namespace rtss::domains {

struct StatsOptions {
  int samples_per_altitude = 1000;
  /// Per-proof expansion limit; <= 0 means unlimited.
  std::int64_t proof_budget = 0;
  std::uint64_t seed = 0;
  int first_altitude = 3;
};

/// Safety-proof difficulty at one altitude, averaged over sampled free states.
struct AltitudeStats {
  int altitude = 0;
  int samples = 0;
  int proven = 0;
  double safety_probability = 0.0;
  double mean_proof_transitions = 0.0;
  double mean_proof_states = 0.0;
  double mean_success_expansions = 0.0;
  double mean_failed_expansions = 0.0;
  std::int64_t states = 0;          // sum of proof path states over successes
  std::int64_t success_expansions = 0;
  std::int64_t failed_expansions = 0;
};

/// Sampled states lie at distances [0, length - margin) so proofs rarely run
/// into the goal line; margin = min(length / 2, 50 * maxAltitude).
int stats_sampling_margin(const AirspaceInstance& instance);

/// One altitude, one sample: the outcome of an isolated proof attempt from a
/// uniformly drawn free cell. The draw depends only on (seed, altitude, index).
struct ProofSample {
  bool proven = false;
  int transitions = 0;
  std::int64_t expansions = 0;
};
ProofSample airspace_proof_sample(const AirspaceDomain& domain, const StatsOptions& options,
                                  int altitude, int index);

/// Reference implementation, one thread.
std::vector<AltitudeStats> airspace_stats_serial(const AirspaceDomain& domain, const StatsOptions& options);

/// OpenMP over samples; results equal the serial version exactly.
std::vector<AltitudeStats> airspace_stats(const AirspaceDomain& domain, const StatsOptions& options);

}  // namespace rtss::domains
