#pragma once

#include <algorithm>
#include <cmath>

#include "carpet/interval_union.hpp"
#include "carpet/rational.hpp"

namespace carpet {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(const Point2& p, const Point2& q) { return std::hypot(p.x - q.x, p.y - q.y); }

template <class T>
struct BasicRect {
  T xmin;
  T xmax;
  T ymin;
  T ymax;

  T width() const { return xmax - xmin; }
  T height() const { return ymax - ymin; }
  BasicInterval<T> x_extent() const { return {xmin, xmax}; }
  BasicInterval<T> y_extent() const { return {ymin, ymax}; }

  friend bool operator==(const BasicRect& a, const BasicRect& b) {
    return a.xmin == b.xmin && a.xmax == b.xmax && a.ymin == b.ymin && a.ymax == b.ymax;
  }
};

using Rect = BasicRect<double>;
using ExactRect = BasicRect<Rational>;

inline double diameter(const Rect& r) { return std::hypot(r.width(), r.height()); }
inline Point2 center(const Rect& r) { return {0.5 * (r.xmin + r.xmax), 0.5 * (r.ymin + r.ymax)}; }

inline bool contains(const Rect& r, const Point2& p) {
  return r.xmin <= p.x && p.x <= r.xmax && r.ymin <= p.y && p.y <= r.ymax;
}

// a ⊆ b, with b widened by tol on every side.
inline bool contains(const Rect& b, const Rect& a, double tol = 0.0) {
  return b.xmin - tol <= a.xmin && a.xmax <= b.xmax + tol && b.ymin - tol <= a.ymin &&
         a.ymax <= b.ymax + tol;
}

inline double distance(const Point2& p, const Rect& r) {
  const double dx = std::max({r.xmin - p.x, 0.0, p.x - r.xmax});
  const double dy = std::max({r.ymin - p.y, 0.0, p.y - r.ymax});
  return std::hypot(dx, dy);
}

inline double distance(const Rect& a, const Rect& b) {
  const double dx = std::max({a.xmin - b.xmax, 0.0, b.xmin - a.xmax});
  const double dy = std::max({a.ymin - b.ymax, 0.0, b.ymin - a.ymax});
  return std::hypot(dx, dy);
}

inline ExactRect to_exact(const Rect& r) {
  return {rational_from_double(r.xmin), rational_from_double(r.xmax), rational_from_double(r.ymin),
          rational_from_double(r.ymax)};
}

inline Rect to_double(const ExactRect& r) {
  return {to_double(r.xmin), to_double(r.xmax), to_double(r.ymin), to_double(r.ymax)};
}

// x ↦ (a1 x1 + b1, a2 x2 + b2). Signed scales admit reflections in either axis.
template <class T>
struct BasicAffineMap {
  T a1;
  T a2;
  T b1;
  T b2;

  static BasicAffineMap identity() { return {T(1), T(1), T(0), T(0)}; }

  T apply_x(const T& x) const { return a1 * x + b1; }
  T apply_y(const T& y) const { return a2 * y + b2; }

  BasicInterval<T> image_x(const BasicInterval<T>& iv) const {
    T p = apply_x(iv.lo);
    T q = apply_x(iv.hi);
    return p <= q ? BasicInterval<T>{p, q} : BasicInterval<T>{q, p};
  }

  BasicInterval<T> image_y(const BasicInterval<T>& iv) const {
    T p = apply_y(iv.lo);
    T q = apply_y(iv.hi);
    return p <= q ? BasicInterval<T>{p, q} : BasicInterval<T>{q, p};
  }

  BasicRect<T> image(const BasicRect<T>& r) const {
    auto xs = image_x(r.x_extent());
    auto ys = image_y(r.y_extent());
    return {xs.lo, xs.hi, ys.lo, ys.hi};
  }

  // The fixed point of the map in each coordinate.
  T fixed_x() const { return b1 / (T(1) - a1); }
  T fixed_y() const { return b2 / (T(1) - a2); }

  friend bool operator==(const BasicAffineMap& f, const BasicAffineMap& g) {
    return f.a1 == g.a1 && f.a2 == g.a2 && f.b1 == g.b1 && f.b2 == g.b2;
  }
};

// (f ∘ g)(x) = f(g(x))
template <class T>
BasicAffineMap<T> operator*(const BasicAffineMap<T>& f, const BasicAffineMap<T>& g) {
  return {f.a1 * g.a1, f.a2 * g.a2, f.a1 * g.b1 + f.b1, f.a2 * g.b2 + f.b2};
}

using AffineMap2D = BasicAffineMap<double>;
using ExactAffineMap = BasicAffineMap<Rational>;

inline Point2 apply(const AffineMap2D& f, const Point2& p) { return {f.apply_x(p.x), f.apply_y(p.y)}; }
inline Point2 fixed_point(const AffineMap2D& f) { return {f.fixed_x(), f.fixed_y()}; }

inline AffineMap2D to_double(const ExactAffineMap& f) {
  return {to_double(f.a1), to_double(f.a2), to_double(f.b1), to_double(f.b2)};
}

inline ExactAffineMap to_exact(const AffineMap2D& f) {
  return {rational_from_double(f.a1), rational_from_double(f.a2), rational_from_double(f.b1),
          rational_from_double(f.b2)};
}

}  // namespace carpet
