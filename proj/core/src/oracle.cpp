#include "udr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "udr/errors.hpp"

namespace udr {
namespace oracle {

namespace {

// Small dedicated union-find; the oracles keep their own copy on purpose.
struct Forest {
  std::vector<int> parent;

  explicit Forest(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

}  // namespace

int brute_force_min_steiner(const Instance& instance, const Grid& candidates,
                            int max_h) {
  instance.validate();
  if (max_h < 0) {
    throw InvalidParameterError("max_h must be nonnegative");
  }
  const int n = static_cast<int>(instance.nodes.size());
  if (n <= 1) return 0;  // empty and singleton instances are connected
  const std::vector<Point> grid = candidates.points();
  const int g = static_cast<int>(grid.size());
  const double r = instance.range;

  // The terminal components never change; contract them once. Grid-grid and
  // grid-component adjacency is precomputed once. Every subset of each
  // cardinality is still tested, in lexicographic order.
  Forest terminal_forest(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (within_range(instance.nodes[static_cast<std::size_t>(a)],
                       instance.nodes[static_cast<std::size_t>(b)], r)) {
        terminal_forest.unite(a, b);
      }
    }
  }
  std::vector<int> component_of(static_cast<std::size_t>(n), -1);
  int m = 0;
  for (int v = 0; v < n; ++v) {
    const int root = terminal_forest.find(v);
    if (component_of[static_cast<std::size_t>(root)] < 0) {
      component_of[static_cast<std::size_t>(root)] = m++;
    }
    component_of[static_cast<std::size_t>(v)] =
        component_of[static_cast<std::size_t>(root)];
  }

  std::vector<char> grid_comp(static_cast<std::size_t>(g) * m, 0);
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < n; ++b) {
      if (within_range(grid[static_cast<std::size_t>(a)],
                       instance.nodes[static_cast<std::size_t>(b)], r)) {
        grid_comp[static_cast<std::size_t>(a) * m +
                  component_of[static_cast<std::size_t>(b)]] = 1;
      }
    }
  }
  std::vector<char> grid_grid(static_cast<std::size_t>(g) * g, 0);
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) {
      grid_grid[static_cast<std::size_t>(a) * g + b] =
          within_range(grid[static_cast<std::size_t>(a)],
                       grid[static_cast<std::size_t>(b)], r)
              ? 1
              : 0;
    }
  }

  std::vector<int> subset;
  std::vector<int> parent_storage(static_cast<std::size_t>(m + max_h + 1));
  int* parent = parent_storage.data();
  auto connects = [&](int h) {
    const int total = m + h;
    for (int i = 0; i < total; ++i) parent[i] = i;
    int blocks = total;
    auto find = [&](int x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    for (int i = 0; i < h; ++i) {
      const int gi = subset[static_cast<std::size_t>(i)];
      const char* comp_row = &grid_comp[static_cast<std::size_t>(gi) * m];
      for (int c = 0; c < m; ++c) {
        if (comp_row[c]) {
          const int a = find(m + i);
          const int b = find(c);
          if (a != b) {
            parent[a] = b;
            --blocks;
          }
        }
      }
      const char* grid_row = &grid_grid[static_cast<std::size_t>(gi) * g];
      for (int j = 0; j < i; ++j) {
        if (grid_row[subset[static_cast<std::size_t>(j)]]) {
          const int a = find(m + i);
          const int b = find(m + j);
          if (a != b) {
            parent[a] = b;
            --blocks;
          }
        }
      }
    }
    return blocks == 1;
  };

  for (int h = 0; h <= max_h; ++h) {
    if (h > g) break;
    subset.assign(static_cast<std::size_t>(h), 0);
    std::iota(subset.begin(), subset.end(), 0);
    if (h == 0) {
      if (connects(0)) return 0;
      continue;
    }
    while (true) {
      if (connects(h)) return h;
      int i = h - 1;
      while (i >= 0 && subset[static_cast<std::size_t>(i)] == g - h + i) --i;
      if (i < 0) break;
      ++subset[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < h; ++j) {
        subset[static_cast<std::size_t>(j)] =
            subset[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  throw InfeasibleError("no Steiner set of size <= " + std::to_string(max_h) +
                        " connects the instance within this grid");
}

mcr::Mapping brute_force_mcr(const Instance& instance,
                             const mcr::CostModel& cost,
                             const Grid& candidates) {
  instance.validate();
  cost.validate(instance);
  const int n = static_cast<int>(instance.nodes.size());

  // Candidate list: grid points, then current positions not already present.
  std::vector<Point> points = candidates.points();
  std::vector<int> identity_of(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    const Point& pos = instance.nodes[static_cast<std::size_t>(v)];
    for (std::size_t c = 0; c < points.size(); ++c) {
      if (coincident(points[c], pos)) {
        identity_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
        break;
      }
    }
    if (identity_of[static_cast<std::size_t>(v)] < 0) {
      identity_of[static_cast<std::size_t>(v)] = static_cast<int>(points.size());
      points.push_back(pos);
    }
  }
  const int m = static_cast<int>(points.size());

  double space = 1.0;
  for (int v = 0; v < n; ++v) space *= static_cast<double>(m);
  if (space > 1e6) {
    throw BudgetExceededError("assignment space " + std::to_string(space) +
                              " exceeds the brute-force cap of 1e6");
  }

  std::vector<char> adjacent(static_cast<std::size_t>(m) * m, 0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      adjacent[static_cast<std::size_t>(a) * m + b] =
          within_range(points[static_cast<std::size_t>(a)],
                       points[static_cast<std::size_t>(b)], instance.range)
              ? 1
              : 0;
    }
  }
  std::vector<std::vector<double>> price(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto& row = price[static_cast<std::size_t>(v)];
    row.resize(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) {
      row[static_cast<std::size_t>(c)] =
          cost.cost(instance, v, points[static_cast<std::size_t>(c)]);
    }
    auto& ord = order[static_cast<std::size_t>(v)];
    ord.push_back(identity_of[static_cast<std::size_t>(v)]);
    for (int c = 0; c < m; ++c) {
      if (c != ord.front()) ord.push_back(c);
    }
  }

  std::vector<int> digit(static_cast<std::size_t>(n), 0);
  std::vector<int> best_digits;
  double best_cost = 0.0;

  auto connected = [&]() {
    Forest forest(n);
    int blocks = n;
    for (int a = 0; a < n && blocks > 1; ++a) {
      const int ca = order[static_cast<std::size_t>(a)]
                          [static_cast<std::size_t>(digit[static_cast<std::size_t>(a)])];
      for (int b = a + 1; b < n; ++b) {
        const int cb = order[static_cast<std::size_t>(b)]
                            [static_cast<std::size_t>(digit[static_cast<std::size_t>(b)])];
        if (adjacent[static_cast<std::size_t>(ca) * m + cb] &&
            forest.unite(a, b)) {
          --blocks;
        }
      }
    }
    return blocks == 1;
  };

  while (true) {
    double assignment_cost = 0.0;
    for (int v = 0; v < n; ++v) {
      assignment_cost +=
          price[static_cast<std::size_t>(v)][static_cast<std::size_t>(
              order[static_cast<std::size_t>(v)]
                   [static_cast<std::size_t>(digit[static_cast<std::size_t>(v)])])];
    }
    if ((best_digits.empty() || assignment_cost < best_cost - kEps) &&
        connected()) {
      best_digits = digit;
      best_cost = assignment_cost;
    }
    int v = n - 1;
    while (v >= 0 && digit[static_cast<std::size_t>(v)] == m - 1) {
      digit[static_cast<std::size_t>(v)] = 0;
      --v;
    }
    if (v < 0) break;
    ++digit[static_cast<std::size_t>(v)];
  }

  mcr::Mapping mapping;
  mapping.targets.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    mapping.targets.push_back(
        points[static_cast<std::size_t>(
            order[static_cast<std::size_t>(v)]
                 [static_cast<std::size_t>(best_digits[static_cast<std::size_t>(v)])])]);
  }
  mapping.total_cost = mcr::total_cost(instance, cost, mapping);
  return mapping;
}

}  // namespace oracle
}  // namespace udr
