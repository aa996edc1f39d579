#pragma once

#include "udr/disk_graph.hpp"
#include "udr/geometry.hpp"
#include "udr/mcr_solver.hpp"

namespace udr {

// Brute-force reference implementations, used only to verify the solvers.
// They enumerate their full search spaces in cardinality-then-lexicographic
// order with no pruning and deliberately share nothing with the solvers
// beyond the geometry and disk-graph primitives.
namespace oracle {

/// Smallest subset size h in 0..max_h such that some h-subset of the grid
/// connects the instance. Throws InfeasibleError when no subset of size
/// <= max_h works.
int brute_force_min_steiner(const Instance& instance, const Grid& candidates,
                            int max_h);

/// Cheapest connected assignment of every node to a candidate point (grid
/// plus injected current positions), by full enumeration. Ties broken
/// lexicographically: nodes in id order, own position first, then grid
/// enumeration order. Throws BudgetExceededError when the assignment space
/// exceeds 10^6.
mcr::Mapping brute_force_mcr(const Instance& instance,
                             const mcr::CostModel& cost,
                             const Grid& candidates);

}  // namespace oracle
}  // namespace udr
