#pragma once

#include <string>

namespace rtss::acceptance {

struct Verdict {
  bool pass = false;
  std::string detail;
};

Verdict table1_replication();
Verdict collision_formula();
Verdict theorem_suite();
Verdict soundness_suite();
Verdict dead_end_avoidance();
Verdict rtfs_vs_saferts_velocity();
Verdict target_rank();
Verdict reexpansion_ratio();
Verdict perfect_agent_velocity();
Verdict exploration_sweep();
Verdict determinism();

}  // namespace rtss::acceptance
