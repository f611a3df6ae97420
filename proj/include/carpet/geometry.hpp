#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "carpet/affine.hpp"
#include "carpet/ifs.hpp"
#include "carpet/interval_union.hpp"

namespace carpet {

struct PointSet2D {
  std::vector<Point2> points;
  // Hausdorff distance to the set the sample stands for is at most this.
  double resolution = 0.0;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
};

// One point per word of length m: the centre of the construction rectangle.
PointSet2D attractor_points(const CarpetSpec& spec, int depth);

// Exact nearest-neighbour queries on a fixed finite set, bucketed on a grid.
class NearestIndex {
 public:
  explicit NearestIndex(const std::vector<Point2>& points);

  double nearest_distance(const Point2& q) const;
  bool empty() const noexcept { return points_.empty(); }

 private:
  std::vector<Point2> points_;
  double x0_ = 0.0;
  double y0_ = 0.0;
  double cell_ = 1.0;
  long gx_ = 1;
  long gy_ = 1;
  std::vector<std::size_t> start_;  // CSR offsets into order_
  std::vector<std::size_t> order_;
};

// sup_{a∈A} dist(a, B).
double directed_hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b);
double hausdorff_distance(const std::vector<Point2>& a, const std::vector<Point2>& b);
double hausdorff_distance(const PointSet2D& a, const PointSet2D& b);

std::vector<Point2> clip_to_ball(const std::vector<Point2>& pts, const Point2& center, double radius);

// d_H(A ∩ D, B ∩ D) for the closed ball D.
double restricted_hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b, const Point2& center,
                            double radius);
double restricted_hausdorff(const PointSet2D& a, const PointSet2D& b, const Point2& center, double radius);

struct VerticalSlice {
  IntervalUnion1D set;
  // Two-sided Hausdorff error to V_x(E) when H2 or H2'' holds; otherwise
  // only the outer direction is guaranteed.
  double resolution = 0.0;
  int depth = 0;
  std::size_t rectangles = 0;
};

// Union of y-extents of depth-m construction rectangles over x. A rectangle
// is kept only if x also lies over one of its children, which is how a
// vertical line actually reaches E under the covering conditions.
// With a y-window, rectangles whose y-extent misses it are pruned, so deep
// slices stay local.
VerticalSlice vertical_slice_cover(const CarpetSpec& spec, double x, int depth,
                                   const std::optional<Interval1D>& y_window = std::nullopt);
IntervalUnion1D vertical_slice(const CarpetSpec& spec, double x, int depth);

IntervalUnion1D epsilon_neighborhood(const IntervalUnion1D& s, double eps);

// Closed ε-neighbourhood of a finite planar set, a union of discs.
struct DiscUnion {
  std::vector<Point2> centers;
  double radius = 0.0;

  bool contains(const Point2& p) const;
};

DiscUnion epsilon_neighborhood(const PointSet2D& s, double eps);

}  // namespace carpet
