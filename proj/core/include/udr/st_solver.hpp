#pragma once

#include <vector>

#include "udr/disk_graph.hpp"
#include "udr/geometry.hpp"
#include "udr/solver_options.hpp"

namespace udr {
namespace st {

enum class Method { kExactGrid, kSteinerizedMst };

/// A set S of added relay points such that induce(V ∪ S, r) is connected.
struct SteinerSolution {
  std::vector<Point> steiner_points;
  Method method = Method::kExactGrid;

  int count() const { return static_cast<int>(steiner_points.size()); }
};

/// True iff the disk graph on V ∪ S with range r is connected.
bool verify_solution(const Instance& instance, const SteinerSolution& solution);

/// Minimum-cardinality subset of grid points whose addition connects the
/// instance, found by increasing-cardinality exhaustive search. Among
/// equal-cardinality solutions the lexicographically first subset in grid
/// enumeration order is returned.
///
/// Candidates at cardinality k are pruned to grid points within r*(k+1) of
/// some terminal, which cannot exclude any feasible k-subset. Throws
/// BudgetExceededError when a cardinality level would enumerate more than
/// options.subset_cap subsets, and InfeasibleError when even the full grid
/// cannot connect the terminals (grid too coarse).
SteinerSolution solve_exact_grid(const Instance& instance, const Grid& candidates,
                                 const SolverOptions& options = {});

/// Feasible construction: Euclidean MST of V, each edge of length L > r
/// subdivided by ceil(L/r) - 1 equally spaced points.
SteinerSolution steinerized_mst(const Instance& instance);

}  // namespace st
}  // namespace udr
