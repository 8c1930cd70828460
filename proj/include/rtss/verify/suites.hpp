#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rtss::verify {

struct CheckResult {
  std::string name;
  std::int64_t cases = 0;
  std::int64_t failures = 0;
  std::string detail;  // first failure, if any

  bool passed() const { return failures == 0 && cases > 0; }
};

struct SuiteOptions {
  int seeds = 100;
  std::uint64_t base_seed = 1;
  /// Directory holding golden/ and tracks/.
  std::string data_dir;
};

/// Brute-force checks of the proof-allocation theorems and of the soundness
/// of safety marks and dead-end flags. Even seeds use Airspace instances of at
/// most 50x8, odd seeds random DAGs of at most 200 vertices.
std::vector<CheckResult> run_theorem_suite(const SuiteOptions& options);

/// Domain-level oracles: collision formula against 50-digit arithmetic,
/// golden instance file, SplitMix64 vector, heuristic admissibility, safe-set
/// fixpoint agreement and predicate strength.
std::vector<CheckResult> run_oracle_suite(const SuiteOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace rtss::verify
