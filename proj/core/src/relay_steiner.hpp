#pragma once

// Internal engine: minimum number of relay points, drawn from a fixed
// candidate universe, needed to make a set of fixed terminal points
// range-connected. Solved exactly as a node-weighted Steiner tree on the
// host graph whose vertices are the terminal components (weight 0) and the
// candidate relays (weight 1), with a Dreyfus-Wagner subset DP. Exponential
// only in the number of terminal components, which is tiny at the scales the
// relocation solver handles.

#include <cstdint>
#include <vector>

#include "udr/geometry.hpp"

namespace udr {
namespace detail {

class RelaySolver {
 public:
  static constexpr int kUnreachable = 1 << 29;

  /// Terminals that must end up connected, candidate relay positions, and
  /// the communication range. Throws BudgetExceededError when the terminals
  /// split into more components than the subset DP can hold.
  RelaySolver(const std::vector<Point>& terminals,
              const std::vector<Point>& relays, double range);

  /// Minimum relay count connecting all terminals; kUnreachable when even
  /// the full universe cannot connect them. Zero when the terminals are
  /// already connected (or there are none).
  int min_relays() const { return base_; }

  /// For each query point q: minimum relay count connecting terminals plus
  /// one additional zero-weight point at q. Exact: the tree may reshape and
  /// may branch at q.
  std::vector<int> min_relays_with(const std::vector<Point>& queries) const;

  /// DP relaxations performed, for budget accounting.
  std::uint64_t work() const { return work_; }

 private:
  int vertex_count() const { return component_count_ + relay_count_; }
  int weight(int v) const { return v < component_count_ ? 0 : 1; }
  void run_dp();

  double range_ = 1.0;
  int component_count_ = 0;
  int relay_count_ = 0;
  int base_ = kUnreachable;
  std::uint64_t work_ = 0;
  std::vector<std::vector<Point>> component_points_;
  std::vector<Point> relay_positions_;
  std::vector<std::vector<int>> adjacency_;  // host graph, vertex -> neighbors
  std::vector<std::vector<int>> dp_;         // dp_[subset][vertex]
};

}  // namespace detail
}  // namespace udr
