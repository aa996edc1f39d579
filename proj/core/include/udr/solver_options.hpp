#pragma once

#include <cstdint>

namespace udr {

/// Shared search budgets and parallelism knobs. Defaults are the documented
/// stable contract; every CLI run echoes the effective values.
struct SolverOptions {
  /// Cap on the number of candidate subsets a single cardinality level of the
  /// exact Steiner search may enumerate.
  std::uint64_t subset_cap = 10'000'000;

  /// Cap on explored partial assignments in the exact relocation search.
  std::uint64_t assignment_cap = 10'000'000;

  /// Worker threads for the subset scan. 1 keeps runs trivially sequential;
  /// results are identical for any value (deterministic reduction).
  int jobs = 1;
};

}  // namespace udr
