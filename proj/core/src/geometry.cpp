#include "udr/geometry.hpp"

#include <algorithm>
#include <limits>

#include "udr/errors.hpp"

namespace udr {

BoundingBox BoundingBox::of(const std::vector<Point>& points) {
  if (points.empty()) {
    return {{0.0, 0.0}, {0.0, 0.0}};
  }
  BoundingBox box{points.front(), points.front()};
  for (const Point& p : points) {
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
  }
  return box;
}

Grid::Grid(Point origin, double step, int columns, int rows)
    : origin_(origin), step_(step), columns_(columns), rows_(rows) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InvalidParameterError("grid step must be positive and finite");
  }
  if (columns < 1 || rows < 1) {
    throw InvalidParameterError("grid must have at least one column and row");
  }
  if (!is_finite(origin)) {
    throw InvalidParameterError("grid origin must be finite");
  }
}

namespace {

// floor(span/step) with a tolerance guard so that spans which are an exact
// multiple of the step (up to kEps) do not lose their last lattice line.
int guarded_count(double span, double step) {
  return static_cast<int>(std::floor(span / step + kEps)) + 1;
}

}  // namespace

Grid Grid::covering(const BoundingBox& box, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InvalidParameterError("grid step must be positive and finite");
  }
  if (box.width() < 0.0 || box.height() < 0.0) {
    throw InvalidParameterError("bounding box is inverted");
  }
  return Grid(box.min, step, guarded_count(box.width(), step),
              guarded_count(box.height(), step));
}

std::vector<Point> Grid::points() const {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) {
    out.push_back(point_at(i));
  }
  return out;
}

std::vector<Point> grid_points(const BoundingBox& box, double step) {
  return Grid::covering(box, step).points();
}

}  // namespace udr
