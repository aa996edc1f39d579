#include "udr/disk_graph.hpp"

#include <algorithm>
#include <numeric>

#include "udr/errors.hpp"

namespace udr {

namespace {

// Plain union-find, path halving.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

void Instance::validate() const {
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw InvalidParameterError("communication range must be positive");
  }
  for (const Point& p : nodes) {
    if (!is_finite(p)) {
      throw InvalidParameterError("node coordinates must be finite");
    }
  }
}

DiskGraph induce(const Instance& instance) {
  instance.validate();
  DiskGraph graph;
  graph.instance_ = instance;
  const int n = static_cast<int>(instance.nodes.size());
  graph.adjacency_.assign(n, {});
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (within_range(instance.nodes[u], instance.nodes[v], instance.range)) {
        graph.edges_.emplace_back(u, v);
        graph.adjacency_[u].push_back(v);
        graph.adjacency_[v].push_back(u);
      }
    }
  }
  return graph;
}

bool DiskGraph::is_connected() const { return components().size() <= 1; }

std::vector<std::vector<int>> DiskGraph::components() const {
  const int n = static_cast<int>(instance_.nodes.size());
  UnionFind uf(n);
  for (const auto& [u, v] : edges_) {
    uf.unite(u, v);
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(n, -1);
  for (int v = 0; v < n; ++v) {
    const int root = uf.find(v);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[root]].push_back(v);
  }
  return blocks;
}

bool is_connected(const DiskGraph& graph) { return graph.is_connected(); }

std::vector<std::vector<int>> components(const DiskGraph& graph) {
  return graph.components();
}

bool points_connected(const std::vector<Point>& points, double range) {
  const int n = static_cast<int>(points.size());
  if (n <= 1) return true;
  UnionFind uf(n);
  int blocks = n;
  for (int u = 0; u < n && blocks > 1; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (within_range(points[u], points[v], range) && uf.unite(u, v)) {
        if (--blocks == 1) break;
      }
    }
  }
  return blocks == 1;
}

std::vector<std::pair<int, int>> euclidean_mst(const std::vector<Point>& points) {
  const int n = static_cast<int>(points.size());
  std::vector<std::pair<int, int>> result;
  if (n <= 1) return result;

  struct Candidate {
    double length;
    int u;
    int v;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      candidates.push_back({distance(points[u], points[v]), u, v});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.length != b.length) return a.length < b.length;
              if (a.u != b.u) return a.u < b.u;
              return a.v < b.v;
            });

  UnionFind uf(n);
  result.reserve(static_cast<std::size_t>(n) - 1);
  for (const Candidate& c : candidates) {
    if (uf.unite(c.u, c.v)) {
      result.emplace_back(c.u, c.v);
      if (static_cast<int>(result.size()) == n - 1) break;
    }
  }
  return result;
}

}  // namespace udr
