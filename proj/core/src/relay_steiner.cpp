#include "relay_steiner.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>

#include "udr/disk_graph.hpp"
#include "udr/errors.hpp"

namespace udr {
namespace detail {

namespace {

constexpr int kMaxComponents = 14;

int saturating_add(int a, int b) {
  if (a >= RelaySolver::kUnreachable || b >= RelaySolver::kUnreachable) {
    return RelaySolver::kUnreachable;
  }
  return a + b;
}

}  // namespace

RelaySolver::RelaySolver(const std::vector<Point>& terminals,
                         const std::vector<Point>& relays, double range)
    : range_(range), relay_count_(static_cast<int>(relays.size())),
      relay_positions_(relays) {
  // Group the terminals into range-connected components; each component is
  // one zero-weight vertex of the host graph.
  const int t = static_cast<int>(terminals.size());
  std::vector<int> parent(static_cast<std::size_t>(t));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int i = 0; i < t; ++i) {
    for (int j = i + 1; j < t; ++j) {
      if (within_range(terminals[i], terminals[j], range_)) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<int> component_of(static_cast<std::size_t>(t), -1);
  for (int i = 0; i < t; ++i) {
    const int root = find(i);
    if (component_of[root] < 0) {
      component_of[root] = component_count_++;
      component_points_.emplace_back();
    }
    component_of[i] = component_of[root];
    component_points_[component_of[i]].push_back(terminals[i]);
  }
  if (component_count_ > kMaxComponents) {
    throw BudgetExceededError("relay search: too many terminal components (" +
                              std::to_string(component_count_) + ")");
  }

  adjacency_.assign(static_cast<std::size_t>(vertex_count()), {});
  auto relay_touches_component = [&](int relay, int comp) {
    for (const Point& p : component_points_[comp]) {
      if (within_range(relay_positions_[relay], p, range_)) return true;
    }
    return false;
  };
  for (int rl = 0; rl < relay_count_; ++rl) {
    const int rv = component_count_ + rl;
    for (int c = 0; c < component_count_; ++c) {
      if (relay_touches_component(rl, c)) {
        adjacency_[c].push_back(rv);
        adjacency_[rv].push_back(c);
      }
    }
    for (int other = 0; other < rl; ++other) {
      if (within_range(relay_positions_[rl], relay_positions_[other], range_)) {
        adjacency_[component_count_ + other].push_back(rv);
        adjacency_[rv].push_back(component_count_ + other);
      }
    }
  }

  run_dp();
}

void RelaySolver::run_dp() {
  if (component_count_ <= 1) {
    base_ = 0;
    if (component_count_ == 1) {
      // Still fill dp_[1][*] so that min_relays_with works.
      dp_.assign(2, std::vector<int>(static_cast<std::size_t>(vertex_count()),
                                     kUnreachable));
    } else {
      return;
    }
  } else {
    dp_.assign(std::size_t{1} << component_count_,
               std::vector<int>(static_cast<std::size_t>(vertex_count()),
                                kUnreachable));
  }

  const int full = (1 << component_count_) - 1;
  const int vertices = vertex_count();

  using HeapItem = std::pair<int, int>;  // (cost, vertex)
  for (int subset = 1; subset <= full; ++subset) {
    auto& row = dp_[static_cast<std::size_t>(subset)];
    if ((subset & (subset - 1)) == 0) {
      row[static_cast<std::size_t>(std::countr_zero(
          static_cast<unsigned>(subset)))] = 0;
    }
    // Merge two complementary sub-trees at a shared vertex. Restricting one
    // side to contain the subset's lowest component halves the submask scan
    // without losing any split.
    const int low = subset & -subset;
    for (int sub = (subset - 1) & subset; sub > 0; sub = (sub - 1) & subset) {
      if (!(sub & low)) continue;
      const auto& a = dp_[static_cast<std::size_t>(sub)];
      const auto& b = dp_[static_cast<std::size_t>(subset ^ sub)];
      for (int v = 0; v < vertices; ++v) {
        const int merged = saturating_add(a[static_cast<std::size_t>(v)],
                                          b[static_cast<std::size_t>(v)]) -
                           ((a[static_cast<std::size_t>(v)] < kUnreachable &&
                             b[static_cast<std::size_t>(v)] < kUnreachable)
                                ? weight(v)
                                : 0);
        if (merged < row[static_cast<std::size_t>(v)]) {
          row[static_cast<std::size_t>(v)] = merged;
        }
        ++work_;
      }
    }
    // Close the row under node-weighted shortest-path extension.
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    for (int v = 0; v < vertices; ++v) {
      if (row[static_cast<std::size_t>(v)] < kUnreachable) {
        heap.emplace(row[static_cast<std::size_t>(v)], v);
      }
    }
    while (!heap.empty()) {
      const auto [cost, v] = heap.top();
      heap.pop();
      if (cost != row[static_cast<std::size_t>(v)]) continue;
      for (int u : adjacency_[static_cast<std::size_t>(v)]) {
        const int relaxed = saturating_add(cost, weight(u));
        ++work_;
        if (relaxed < row[static_cast<std::size_t>(u)]) {
          row[static_cast<std::size_t>(u)] = relaxed;
          heap.emplace(relaxed, u);
        }
      }
    }
  }

  base_ = kUnreachable;
  for (int v = 0; v < vertices; ++v) {
    base_ = std::min(base_, dp_[static_cast<std::size_t>(full)]
                                [static_cast<std::size_t>(v)]);
  }
}

std::vector<int> RelaySolver::min_relays_with(
    const std::vector<Point>& queries) const {
  std::vector<int> out(queries.size(), kUnreachable);
  if (component_count_ == 0) {
    // A lone extra point is a connected graph by itself.
    std::fill(out.begin(), out.end(), 0);
    return out;
  }

  const int full = (1 << component_count_) - 1;
  const int vertices = vertex_count();
  std::vector<int> attach(static_cast<std::size_t>(full) + 1);
  std::vector<int> best(static_cast<std::size_t>(full) + 1);

  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const Point& q = queries[qi];
    // attach[S]: cheapest sub-tree spanning S whose root lies within range
    // of q. The extra point itself weighs nothing.
    bool reaches_host = false;
    for (int subset = 1; subset <= full; ++subset) {
      int cheapest = kUnreachable;
      const auto& row = dp_[static_cast<std::size_t>(subset)];
      for (int v = 0; v < vertices; ++v) {
        if (row[static_cast<std::size_t>(v)] >= cheapest) continue;
        bool in_range = false;
        if (v < component_count_) {
          // Component vertices occupy several points; any of them will do.
          for (const Point& p : component_points_[static_cast<std::size_t>(v)]) {
            if (within_range(p, q, range_)) {
              in_range = true;
              break;
            }
          }
        } else {
          in_range = within_range(
              relay_positions_[static_cast<std::size_t>(v - component_count_)],
              q, range_);
        }
        if (in_range) cheapest = row[static_cast<std::size_t>(v)];
      }
      attach[static_cast<std::size_t>(subset)] = cheapest;
      if (cheapest < kUnreachable) reaches_host = true;
    }
    if (!reaches_host) continue;

    // Branches meeting at q partition the component set.
    for (int subset = 1; subset <= full; ++subset) {
      int value = attach[static_cast<std::size_t>(subset)];
      const int low = subset & -subset;
      for (int sub = (subset - 1) & subset; sub > 0; sub = (sub - 1) & subset) {
        if (!(sub & low)) continue;
        value = std::min(
            value, saturating_add(best[static_cast<std::size_t>(sub)],
                                  best[static_cast<std::size_t>(subset ^ sub)]));
      }
      best[static_cast<std::size_t>(subset)] = value;
    }
    out[qi] = best[static_cast<std::size_t>(full)];
  }
  return out;
}

}  // namespace detail
}  // namespace udr
