#include "udr/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "udr/errors.hpp"
#include "udr/oracle.hpp"
#include "udr/st_solver.hpp"

namespace udr {
namespace reduction {

int iteration_bound(const Instance& instance) {
  instance.validate();
  const double side = instance.bounding_box().square_side();
  const int per_axis =
      static_cast<int>(std::floor(side / instance.range + kEps)) + 1;
  return per_axis * per_axis;
}

namespace {

Point auxiliary_start(const Instance& instance, const Grid& grid) {
  Point centroid{0.0, 0.0};
  if (!instance.nodes.empty()) {
    for (const Point& p : instance.nodes) {
      centroid.x += p.x;
      centroid.y += p.y;
    }
    centroid.x /= static_cast<double>(instance.nodes.size());
    centroid.y /= static_cast<double>(instance.nodes.size());
  }
  Point best = grid.point_at(0);
  double best_dist = distance(best, centroid);
  for (int i = 1; i < grid.size(); ++i) {
    const Point p = grid.point_at(i);
    const double d = distance(p, centroid);
    if (d < best_dist - kEps) {
      best = p;
      best_dist = d;
    }
  }
  return best;
}

}  // namespace

ReductionResult st_via_mcr(const Instance& instance, const Grid& candidates,
                           const SolverOptions& options,
                           const McrOracle& oracle) {
  instance.validate();
  const McrOracle solve =
      oracle ? oracle
             : [](const Instance& inst, const mcr::CostModel& cost,
                  const Grid& grid, const SolverOptions& opts) {
                 return mcr::solve_exact_grid(inst, cost, grid, opts);
               };

  const int n = static_cast<int>(instance.nodes.size());
  std::vector<int> original_ids(static_cast<std::size_t>(n));
  std::iota(original_ids.begin(), original_ids.end(), 0);
  // The charged set is frozen before the loop; auxiliaries are never added.
  const mcr::CostModel cost = mcr::CostModel::indicator(original_ids);

  const int bound = iteration_bound(instance);
  const Point aux_start = auxiliary_start(instance, candidates);

  ReductionResult result;
  Instance work = instance;
  int iteration = 0;
  while (true) {
    const mcr::Mapping mapping = solve(work, cost, candidates, options);
    const int aux_count = static_cast<int>(work.nodes.size()) - n;
    result.trace.push_back({iteration, aux_count, mapping.total_cost});
    // Indicator charges are integral, so exact-zero is a safe loop test.
    if (mapping.total_cost <= 0.0) {
      result.steiner_count = aux_count;
      result.iterations = aux_count;
      result.last_mapping = mapping;
      result.final_instance = work;
      result.placements.assign(mapping.targets.begin() + n,
                               mapping.targets.end());
      return result;
    }
    if (aux_count >= bound) {
      throw IterationCapError(
          "reduction loop did not terminate within the covering bound of " +
          std::to_string(bound) +
          " auxiliaries; the grid is too coarse or the oracle is broken");
    }
    work.nodes.push_back(aux_start);
    ++iteration;
  }
}

Theorem1Report verify_theorem1(const Instance& instance, const Grid& candidates,
                               const SolverOptions& options) {
  Theorem1Report report;
  const ReductionResult reduction = st_via_mcr(instance, candidates, options);
  report.reduction_count = reduction.steiner_count;
  report.iterations = reduction.iterations;
  report.bound = iteration_bound(instance);
  report.trace = reduction.trace;
  report.final_cost = reduction.last_mapping.total_cost;

  const int n = static_cast<int>(instance.nodes.size());
  double max_move = 0.0;
  for (int v = 0; v < n; ++v) {
    max_move = std::max(
        max_move, distance(instance.nodes[static_cast<std::size_t>(v)],
                           reduction.last_mapping.targets[static_cast<std::size_t>(v)]));
  }
  report.max_original_displacement = max_move;
  report.loop_exit_clean = report.final_cost == 0.0 && max_move <= kEps;

  st::SteinerSolution as_solution;
  as_solution.steiner_points = reduction.placements;
  report.placements_feasible = st::verify_solution(instance, as_solution);

  try {
    report.oracle_count = oracle::brute_force_min_steiner(
        instance, candidates, reduction.steiner_count);
  } catch (const InfeasibleError&) {
    report.oracle_count = -1;  // oracle needs more points than the reduction
  }
  report.counts_equal = report.oracle_count == report.reduction_count;
  return report;
}

}  // namespace reduction
}  // namespace udr
