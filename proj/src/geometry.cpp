#include "carpet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "carpet/error.hpp"

namespace carpet {

namespace {

constexpr std::size_t kBruteForcePairs = 1u << 22;

bool over(const Rect& r, double x) { return r.xmin <= x && x <= r.xmax; }

}  // namespace

PointSet2D attractor_points(const CarpetSpec& spec, int depth) {
  if (depth < 0) throw Error(Errc::InvalidArgument, "depth must be nonnegative");
  const double words = std::pow(static_cast<double>(spec.size()), depth);
  if (words > static_cast<double>(spec.budget())) {
    throw Error(Errc::DepthBudgetExceeded, "N^m = " + std::to_string(words) + " exceeds the word budget");
  }
  PointSet2D out;
  out.points.reserve(static_cast<std::size_t>(words));
  BudgetCounter budget(spec.budget() * 2);
  for_each_word(
      spec, depth, budget, [](const Word&, const AffineMap2D&) { return true; },
      [&](const Word&, const AffineMap2D& f) { out.points.push_back(center(f.image(spec.q()))); });
  out.resolution = spec.diam_q() * std::pow(spec.contraction(), depth);
  return out;
}

NearestIndex::NearestIndex(const std::vector<Point2>& points) : points_(points) {
  if (points_.empty()) return;
  double x1 = points_[0].x, y1 = points_[0].y;
  x0_ = x1;
  y0_ = y1;
  for (const auto& p : points_) {
    x0_ = std::min(x0_, p.x);
    y0_ = std::min(y0_, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  const double w = x1 - x0_;
  const double h = y1 - y0_;
  const double n = static_cast<double>(points_.size());
  const double side = std::max(w, h);
  cell_ = side > 0 ? std::max(std::sqrt(std::max(w, side * 1e-6) * std::max(h, side * 1e-6) / n), side / 4096.0)
                     : 1.0;
  gx_ = std::max<long>(1, static_cast<long>(w / cell_) + 1);
  gy_ = std::max<long>(1, static_cast<long>(h / cell_) + 1);
  std::vector<std::size_t> key(points_.size());
  start_.assign(static_cast<std::size_t>(gx_ * gy_) + 1, 0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const long cx = std::min(gx_ - 1, static_cast<long>((points_[i].x - x0_) / cell_));
    const long cy = std::min(gy_ - 1, static_cast<long>((points_[i].y - y0_) / cell_));
    key[i] = static_cast<std::size_t>(cy * gx_ + cx);
    ++start_[key[i] + 1];
  }
  for (std::size_t k = 1; k < start_.size(); ++k) start_[k] += start_[k - 1];
  order_.resize(points_.size());
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) order_[fill[key[i]]++] = i;
}

double NearestIndex::nearest_distance(const Point2& q) const {
  if (points_.empty()) throw Error(Errc::EmptyInput, "nearest neighbour in an empty set");
  const long qx = std::clamp(static_cast<long>(std::floor((q.x - x0_) / cell_)), 0L, gx_ - 1);
  const long qy = std::clamp(static_cast<long>(std::floor((q.y - y0_) / cell_)), 0L, gy_ - 1);
  double best = std::numeric_limits<double>::infinity();
  auto scan = [&](long cx, long cy) {
    if (cx < 0 || cy < 0 || cx >= gx_ || cy >= gy_) return;
    const auto k = static_cast<std::size_t>(cy * gx_ + cx);
    for (std::size_t t = start_[k]; t < start_[k + 1]; ++t) best = std::min(best, distance(q, points_[order_[t]]));
  };
  for (long r = 0;; ++r) {
    if (r == 0) {
      scan(qx, qy);
    } else {
      for (long cx = qx - r; cx <= qx + r; ++cx) {
        scan(cx, qy - r);
        scan(cx, qy + r);
      }
      for (long cy = qy - r + 1; cy <= qy + r - 1; ++cy) {
        scan(qx - r, cy);
        scan(qx + r, cy);
      }
    }
    // Lower bound on the distance to any cell outside the examined block.
    double bound = std::numeric_limits<double>::infinity();
    if (qx - r > 0) bound = std::min(bound, q.x - (x0_ + (qx - r) * cell_));
    if (qx + r < gx_ - 1) bound = std::min(bound, x0_ + (qx + r + 1) * cell_ - q.x);
    if (qy - r > 0) bound = std::min(bound, q.y - (y0_ + (qy - r) * cell_));
    if (qy + r < gy_ - 1) bound = std::min(bound, y0_ + (qy + r + 1) * cell_ - q.y);
    if (std::isinf(bound) || best <= bound) return best;
  }
}

double directed_hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptyInput, "Hausdorff distance needs nonempty sets");
  double worst = 0.0;
  if (a.size() * b.size() <= kBruteForcePairs) {
    for (const auto& p : a) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : b) {
        best = std::min(best, distance(p, q));
        if (best <= worst) break;
      }
      worst = std::max(worst, best);
    }
    return worst;
  }
  const NearestIndex index(b);
  for (const auto& p : a) worst = std::max(worst, index.nearest_distance(p));
  return worst;
}

double hausdorff_distance(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff_distance(const PointSet2D& a, const PointSet2D& b) { return hausdorff_distance(a.points, b.points); }

std::vector<Point2> clip_to_ball(const std::vector<Point2>& pts, const Point2& c, double radius) {
  std::vector<Point2> out;
  for (const auto& p : pts) {
    if (distance(p, c) <= radius) out.push_back(p);
  }
  return out;
}

double restricted_hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b, const Point2& c,
                            double radius) {
  const auto ca = clip_to_ball(a, c, radius);
  const auto cb = clip_to_ball(b, c, radius);
  if (ca.empty() || cb.empty()) throw Error(Errc::EmptyIntersection, "a set misses the ball");
  return hausdorff_distance(ca, cb);
}

double restricted_hausdorff(const PointSet2D& a, const PointSet2D& b, const Point2& c, double radius) {
  return restricted_hausdorff(a.points, b.points, c, radius);
}

VerticalSlice vertical_slice_cover(const CarpetSpec& spec, double x, int depth,
                                   const std::optional<Interval1D>& y_window) {
  if (depth < 0) throw Error(Errc::InvalidArgument, "depth must be nonnegative");
  VerticalSlice out;
  out.depth = depth;
  out.resolution = spec.q().height() * std::pow(spec.alpha2_max(), depth);
  std::vector<Interval1D> parts;
  BudgetCounter budget(spec.budget());
  const Rect& q = spec.q();
  // Each image is clipped to its parent so rounding cannot break nesting.
  auto rec = [&](auto&& self, const AffineMap2D& f, const Rect& parent, int level) -> void {
    budget.tick();
    Rect r = f.image(q);
    r = {std::max(r.xmin, parent.xmin), std::min(r.xmax, parent.xmax), std::max(r.ymin, parent.ymin),
         std::min(r.ymax, parent.ymax)};
    if (!over(r, x)) return;
    if (y_window && (r.ymax < y_window->lo || r.ymin > y_window->hi)) return;
    if (level == depth) {
      for (const auto& g : spec.maps()) {
        if (over((f * g).image(q), x)) {
          parts.push_back(r.y_extent());
          ++out.rectangles;
          return;
        }
      }
      return;
    }
    for (const auto& g : spec.maps()) self(self, f * g, r, level + 1);
  };
  rec(rec, AffineMap2D::identity(), q, 0);
  out.set = IntervalUnion1D(std::move(parts));
  return out;
}

IntervalUnion1D vertical_slice(const CarpetSpec& spec, double x, int depth) {
  return vertical_slice_cover(spec, x, depth).set;
}

IntervalUnion1D epsilon_neighborhood(const IntervalUnion1D& s, double eps) {
  if (eps < 0) throw Error(Errc::NegativeEpsilon, "epsilon must be nonnegative");
  std::vector<Interval1D> parts;
  for (const auto& iv : s.intervals()) parts.push_back({iv.lo - eps, iv.hi + eps});
  return IntervalUnion1D(std::move(parts));
}

bool DiscUnion::contains(const Point2& p) const {
  return std::any_of(centers.begin(), centers.end(), [&](const Point2& c) { return distance(p, c) <= radius; });
}

DiscUnion epsilon_neighborhood(const PointSet2D& s, double eps) {
  if (eps < 0) throw Error(Errc::NegativeEpsilon, "epsilon must be nonnegative");
  return DiscUnion{s.points, eps};
}

}  // namespace carpet
