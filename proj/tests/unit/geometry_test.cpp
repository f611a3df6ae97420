#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "carpet/error.hpp"
#include "carpet/geometry.hpp"
#include "carpet/rng.hpp"
#include "support.hpp"

using namespace carpet;
using test_support::fixture;

namespace {

double brute_directed(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  double worst = 0.0;
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : b) best = std::min(best, std::hypot(p.x - r.x, p.y - r.y));
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<Point2> random_points(Rng& rng, std::size_t n, double spread) {
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform(-spread, spread), rng.uniform(-spread, spread)});
  return pts;
}

// Union of y-extents over all depth-m rectangles whose x-extent holds x.
IntervalUnion1D naive_slice(const CarpetSpec& s, double x, int depth) {
  std::vector<Interval1D> parts;
  BudgetCounter budget(s.budget());
  for_each_word(
      s, depth, budget, [](const Word&, const AffineMap2D&) { return true; },
      [&](const Word&, const AffineMap2D& f) {
        const Rect r = f.image(s.q());
        if (r.xmin <= x && x <= r.xmax) parts.push_back(r.y_extent());
      });
  return IntervalUnion1D(parts);
}

}  // namespace

TEST_CASE("grid nearest-neighbour index agrees with brute force") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_points(rng, 300, 1.0 + trial);
    const auto b = random_points(rng, 500, 0.5);
    const NearestIndex index(b);
    for (const auto& p : a) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& r : b) best = std::min(best, std::hypot(p.x - r.x, p.y - r.y));
      CHECK(index.nearest_distance(p) == best);
    }
  }
}

TEST_CASE("large directed distances use the index and match brute force") {
  Rng rng(9);
  const auto a = random_points(rng, 3000, 1.0);
  const auto b = random_points(rng, 2000, 1.0);
  // 3000 × 2000 pairs is past the brute-force cut-off of the library.
  CHECK(directed_hausdorff(a, b) == brute_directed(a, b));
}

TEST_CASE("Hausdorff distance of parallel translates") {
  Rng rng(3);
  // Points of one horizontal fibre and its vertical translate: every cross
  // distance is at least c, and each point's own translate attains it.
  std::vector<Point2> a;
  for (int i = 0; i < 50; ++i) a.push_back({rng.uniform(-1.0, 1.0), 0.5});
  for (double c : {0.25, 1.5, -3.0}) {
    std::vector<Point2> b;
    for (const auto& p : a) b.push_back({p.x, p.y + c});
    CHECK(hausdorff_distance(a, b) == std::abs(c));
  }
  // Off a common fibre the translate distance is only an upper bound.
  const auto cloud = random_points(rng, 50, 1.0);
  std::vector<Point2> moved;
  for (const auto& p : cloud) moved.push_back({p.x, p.y + 0.5});
  CHECK(hausdorff_distance(cloud, moved) <= 0.5);
  CHECK(hausdorff_distance(cloud, moved) == std::max(brute_directed(cloud, moved), brute_directed(moved, cloud)));
}

TEST_CASE("Hausdorff distance edge cases") {
  std::vector<Point2> a{{0, 0}}, b{{3, 4}};
  CHECK(hausdorff_distance(a, b) == 5.0);
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK_THROWS_AS(hausdorff_distance(a, std::vector<Point2>{}), Error);
}

TEST_CASE("restricted distance clips to the ball") {
  std::vector<Point2> a{{0, 0}, {10, 0}}, b{{0, 0.5}, {-10, 0}};
  CHECK(restricted_hausdorff(a, b, {0, 0}, 1.0) == 0.5);
  CHECK(clip_to_ball(a, {0, 0}, 1.0).size() == 1);
  CHECK_THROWS_WITH_AS(restricted_hausdorff(a, b, {5, 5}, 0.1), doctest::Contains("EmptyIntersection"), Error);
}

TEST_CASE("attractor points: count and resolution") {
  const auto s = fixture("centre_line");
  const auto p = attractor_points(s, 3);
  CHECK(p.size() == 64);
  CHECK(p.resolution == doctest::Approx(s.diam_q() * std::pow(0.5, 3)));
}

TEST_CASE("centre_line slice at x=1/4, depth 1") {
  const auto s = fixture("centre_line");
  const auto v = vertical_slice(s, 0.25, 1);
  REQUIRE(v.size() == 2);
  CHECK(v[0].lo == 0.0);
  CHECK(v[0].hi == doctest::Approx(0.2));
  CHECK(v[1].lo == doctest::Approx(0.55));
  CHECK(v[1].hi == doctest::Approx(0.75));
}

TEST_CASE("slices refine the naive rectangle slice and nest in depth") {
  const auto s = fixture("two_gap");
  Rng rng(17);
  for (int k = 0; k < 20; ++k) {
    const double x = rng.uniform();
    CAPTURE(x);
    IntervalUnion1D prev = vertical_slice(s, x, 1);
    CHECK(prev.subset_of(naive_slice(s, x, 1)));
    for (int depth = 2; depth <= 5; ++depth) {
      const auto v = vertical_slice(s, x, depth);
      CHECK(v.subset_of(naive_slice(s, x, depth)));
      CHECK(v.subset_of(prev));
      prev = v;
    }
  }
}

TEST_CASE("slice resolution shrinks with depth") {
  const auto s = fixture("centre_line");
  const auto a = vertical_slice_cover(s, 0.3, 3);
  const auto b = vertical_slice_cover(s, 0.3, 5);
  CHECK(b.resolution < a.resolution);
  CHECK(b.resolution == doctest::Approx(s.q().height() * std::pow(0.2, 5)));
}

TEST_CASE("epsilon neighbourhoods") {
  const auto u = IntervalUnion1D({{0.0, 1.0}, {1.5, 2.0}});
  CHECK(epsilon_neighborhood(u, 0.25) == IntervalUnion1D({{-0.25, 2.25}}));
  CHECK(epsilon_neighborhood(u, 0.0) == u);
  CHECK_THROWS_WITH_AS(epsilon_neighborhood(u, -1.0), doctest::Contains("NegativeEpsilon"), Error);
  PointSet2D pts{{{0, 0}, {2, 0}}, 0.0};
  const auto d = epsilon_neighborhood(pts, 0.5);
  CHECK(d.contains({0.3, 0.3}));
  CHECK_FALSE(d.contains({1.0, 0.0}));
}
