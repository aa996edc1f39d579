#pragma once

#include <vector>

#include "udr/disk_graph.hpp"
#include "udr/geometry.hpp"
#include "udr/solver_options.hpp"

namespace udr {
namespace mcr {

enum class CostKind {
  kIndicatorOriginalMoved,
  kEuclideanDistance,
  kPerNodeTable,
};

/// Movement-cost function c(v, p). All costs are nonnegative and finite.
///
/// - indicator: 1 when v belongs to the original set and p differs from v's
///   current position (within kEps), else 0. Nodes outside the original set
///   are free: relocating them costs nothing anywhere.
/// - euclidean: distance from v's current position to p, for every node.
/// - per-node table: a fixed charge per node applied when it moves off its
///   current position; a zero entry makes the node free.
class CostModel {
 public:
  static CostModel indicator(std::vector<int> original_ids);
  static CostModel euclidean();
  static CostModel per_node_table(std::vector<double> move_charges);

  CostKind kind() const { return kind_; }
  const std::vector<int>& original_set() const { return original_ids_; }

  /// c(v, target) for node id v of `instance`.
  double cost(const Instance& instance, int id, const Point& target) const;

  /// Indicator and table costs do not depend on where a moved node lands.
  bool position_independent() const {
    return kind_ != CostKind::kEuclideanDistance;
  }

  /// Charge for moving node id anywhere off its current position
  /// (position-independent kinds only).
  double move_charge(int id) const;

  /// Throws InvalidParameterError when the model does not fit the instance
  /// (bad ids, negative or non-finite charges).
  void validate(const Instance& instance) const;

 private:
  CostKind kind_ = CostKind::kEuclideanDistance;
  std::vector<int> original_ids_;
  std::vector<double> move_charges_;
};

/// The relocation function M plus its total cost under a CostModel.
struct Mapping {
  std::vector<Point> targets;  // indexed by node id
  double total_cost = 0.0;
};

/// Exact sum of c(v, M(v)) over all nodes.
double total_cost(const Instance& instance, const CostModel& cost,
                  const Mapping& mapping);

/// True iff the disk graph re-induced at the mapped positions is connected.
bool verify_mapping(const Instance& instance, const Mapping& mapping);

/// Minimum-total-cost mapping with targets restricted to the candidate set
/// (grid points plus every node's current position, so "don't move" is always
/// representable). Deterministic: among equal-cost optima the assignment that
/// is lexicographically first — nodes in id order, each node's candidates
/// ordered own-position-first then grid enumeration order — is returned.
///
/// Throws BudgetExceededError when the pruned search exceeds
/// options.assignment_cap explored states.
Mapping solve_exact_grid(const Instance& instance, const CostModel& cost,
                         const Grid& candidates, const SolverOptions& options = {});

/// Practical feasible solver. Connected input returns the identity mapping.
/// When enough free (zero-charge) nodes exist they are greedily assigned to
/// the steinerized-MST relay positions of the remaining nodes; otherwise all
/// nodes contract toward the centroid by a factor 0.1 per round until the
/// graph connects.
Mapping solve_heuristic(const Instance& instance, const CostModel& cost);

}  // namespace mcr
}  // namespace udr
