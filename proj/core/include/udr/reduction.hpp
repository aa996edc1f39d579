#pragma once

#include <functional>
#include <vector>

#include "udr/disk_graph.hpp"
#include "udr/geometry.hpp"
#include "udr/mcr_solver.hpp"
#include "udr/solver_options.hpp"

namespace udr {
namespace reduction {

struct TraceEntry {
  int iteration;        // 0 for the initial call, then 1, 2, ...
  int auxiliary_count;  // |U| when the relocation solver ran
  double total_cost;    // indicator cost it reported
};

/// Outcome of solving the Steiner problem through repeated relocation calls
/// with zero-cost auxiliary nodes.
struct ReductionResult {
  int steiner_count = 0;            // |U| on termination
  std::vector<Point> placements;    // final positions of the auxiliary nodes
  std::vector<TraceEntry> trace;    // one entry per relocation call
  mcr::Mapping last_mapping;        // mapping returned by the final call
  Instance final_instance;          // V plus the auxiliaries, as last solved
  int iterations = 0;               // equals |U|
};

using McrOracle =
    std::function<mcr::Mapping(const Instance&, const mcr::CostModel&,
                               const Grid&, const SolverOptions&)>;

/// Covering-bound cap on the loop: (floor(L/r) + 1)^2 where L is the side of
/// the instance's bounding square. A single point yields 1.
int iteration_bound(const Instance& instance);

/// Runs the reduction loop: start with no auxiliaries, solve the relocation
/// problem under the indicator cost whose original set is exactly the ids of
/// V, and while the reported cost is positive add one zero-cost auxiliary
/// node and re-solve. On termination the auxiliaries' assigned positions are
/// a minimum Steiner-point set over the same candidate grid.
///
/// Each auxiliary starts at the grid point nearest the centroid of V; under
/// the indicator cost a zero-charge node's start position cannot affect the
/// optimum, and keeping it on the grid keeps the relocation candidate space
/// identical to the grid the Steiner-side oracle searches.
///
/// Throws IterationCapError when the loop passes iteration_bound (broken
/// oracle or too-coarse grid) and propagates the oracle's budget errors.
ReductionResult st_via_mcr(const Instance& instance, const Grid& candidates,
                           const SolverOptions& options = {},
                           const McrOracle& oracle = {});

/// Desk-scale cross-check of the reduction against the independent
/// brute-force Steiner oracle on the same grid.
struct Theorem1Report {
  int reduction_count = 0;
  int oracle_count = -1;   // -1 when the oracle could not match the cap
  bool counts_equal = false;
  double final_cost = 0.0;
  double max_original_displacement = 0.0;
  bool loop_exit_clean = false;  // final cost exactly 0, originals unmoved
  bool placements_feasible = false;
  int iterations = 0;
  int bound = 0;
  std::vector<TraceEntry> trace;
};

Theorem1Report verify_theorem1(const Instance& instance, const Grid& candidates,
                               const SolverOptions& options = {});

}  // namespace reduction
}  // namespace udr
