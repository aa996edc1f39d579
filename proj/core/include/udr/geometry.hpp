#pragma once

#include <cmath>
#include <vector>

namespace udr {

/// Absolute tolerance used for every coordinate / distance comparison in the
/// library. Links at distance exactly r are kept, so all range tests read
/// `d <= r + kEps`.
inline constexpr double kEps = 1e-9;

/// A position in the 2-D Euclidean plane. Coordinates must be finite.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline bool is_finite(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

inline double distance(const Point& p, const Point& q) {
  return std::hypot(p.x - q.x, p.y - q.y);
}

inline bool almost_equal(double a, double b, double eps = kEps) {
  return std::fabs(a - b) <= eps;
}

inline bool coincident(const Point& p, const Point& q, double eps = kEps) {
  return almost_equal(p.x, q.x, eps) && almost_equal(p.y, q.y, eps);
}

/// Axis-aligned box. May be degenerate (a segment or a single point).
struct BoundingBox {
  Point min;
  Point max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }

  /// Side of the smallest enclosing square (used by the covering bound).
  double square_side() const { return std::max(width(), height()); }

  bool contains(const Point& p, double eps = kEps) const {
    return p.x >= min.x - eps && p.x <= max.x + eps && p.y >= min.y - eps &&
           p.y <= max.y + eps;
  }

  BoundingBox inflated(double margin) const {
    return {{min.x - margin, min.y - margin}, {max.x + margin, max.y + margin}};
  }

  static BoundingBox of(const std::vector<Point>& points);
};

/// Finite rectangular lattice of candidate points. Enumeration is row-major
/// from the origin: index i maps to column i % columns, row i / columns, so
/// iteration order (and therefore every solver tie-break) is reproducible.
class Grid {
 public:
  Grid(Point origin, double step, int columns, int rows);

  /// Lattice of spacing `step` whose extent is (floor(width/step)+1) x
  /// (floor(height/step)+1) points anchored at box.min.
  static Grid covering(const BoundingBox& box, double step);

  const Point& origin() const { return origin_; }
  double step() const { return step_; }
  int columns() const { return columns_; }
  int rows() const { return rows_; }
  int size() const { return columns_ * rows_; }

  Point point_at(int index) const {
    return {origin_.x + step_ * (index % columns_),
            origin_.y + step_ * (index / columns_)};
  }

  std::vector<Point> points() const;

 private:
  Point origin_;
  double step_;
  int columns_;
  int rows_;
};

/// All lattice points of spacing `step` covering `box`, row-major.
/// Throws InvalidParameterError when step <= 0.
std::vector<Point> grid_points(const BoundingBox& box, double step);

}  // namespace udr
