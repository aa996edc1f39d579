#pragma once

#include <utility>
#include <vector>

#include "udr/geometry.hpp"

namespace udr {

/// Node positions plus the shared communication range r. Node ids are the
/// vector indices 0..|V|-1 and stay stable across every operation.
struct Instance {
  std::vector<Point> nodes;
  double range = 1.0;

  /// Throws InvalidParameterError on nonpositive range or non-finite
  /// coordinates.
  void validate() const;

  BoundingBox bounding_box() const { return BoundingBox::of(nodes); }
};

/// Are two positions within communication range? Boundary links at distance
/// exactly r are present.
inline bool within_range(const Point& a, const Point& b, double range) {
  return distance(a, b) <= range + kEps;
}

/// Undirected unit-disk graph induced from an instance. Immutable after
/// construction; all queries are read-only and safe to call concurrently.
class DiskGraph {
 public:
  const Instance& instance() const { return instance_; }

  /// Unordered id pairs (u < v), in lexicographic order.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }

  bool is_connected() const;

  /// Disjoint cover of all ids. Blocks are sorted ascending and ordered by
  /// their smallest member.
  std::vector<std::vector<int>> components() const;

  friend DiskGraph induce(const Instance& instance);

 private:
  Instance instance_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// Builds the edge set {u,v} <=> distance(u,v) <= r + eps. Deterministic.
DiskGraph induce(const Instance& instance);

bool is_connected(const DiskGraph& graph);
std::vector<std::vector<int>> components(const DiskGraph& graph);

/// True when the point set is connected under range r; avoids materializing
/// the graph. Empty and singleton sets are connected.
bool points_connected(const std::vector<Point>& points, double range);

/// Minimum-total-length spanning tree of the complete Euclidean graph.
/// Ties broken by (length, smaller id pair); edges returned in selection
/// order with u < v. A single point yields no edges.
std::vector<std::pair<int, int>> euclidean_mst(const std::vector<Point>& points);

}  // namespace udr
