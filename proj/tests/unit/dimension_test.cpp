#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "carpet/dimension.hpp"
#include "carpet/error.hpp"
#include "carpet/rng.hpp"
#include "support.hpp"

using namespace carpet;
using test_support::fixture;

namespace {

// Cells of level n that a closed rectangle overlaps with positive length in
// each non-degenerate direction, computed on integers.
void overlapped_cells(const Rect& r, int n, std::set<std::pair<long, long>>& out) {
  const double side = std::ldexp(1.0, n);
  auto range = [&](double lo, double hi) {
    long a = static_cast<long>(std::floor(lo * side));
    long b = static_cast<long>(std::ceil(hi * side)) - 1;
    if (hi == lo) b = a;
    a = std::clamp(a, 0L, static_cast<long>(side) - 1);
    b = std::clamp(b, a, static_cast<long>(side) - 1);
    return std::pair{a, b};
  };
  const auto [x0, x1] = range(r.xmin, r.xmax);
  const auto [y0, y1] = range(r.ymin, r.ymax);
  for (long x = x0; x <= x1; ++x)
    for (long y = y0; y <= y1; ++y) out.insert({x, y});
}

// Level-n index of an exact coordinate; `upper` gives the last cell an
// interval ending at v overlaps with positive length.
long exact_index(const Rational& v, int n, bool upper) {
  const Rational scaled = v * Rational(mpz_class(1) << n);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  if (upper && Rational(fl) == scaled) fl -= 1;
  return std::clamp(fl.get_si(), 0L, (1L << n) - 1);
}

// Plain enumeration of all depth-m rectangles in exact arithmetic: cells
// they overlap with positive length, and the cells of images of fixed points.
std::pair<std::size_t, std::size_t> brute_counts(const CarpetSpec& unit, int n, int m) {
  std::set<std::pair<long, long>> raw, pts;
  REQUIRE(unit.bounding().exact);
  const ExactRect q = *unit.bounding().exact;
  auto rec = [&](auto&& self, const ExactAffineMap& f, int level) -> void {
    if (level < m) {
      for (const auto& g : unit.exact_maps()) self(self, f * g, level + 1);
      return;
    }
    const ExactRect r = f.image(q);
    const long x0 = exact_index(r.xmin, n, false), y0 = exact_index(r.ymin, n, false);
    const long x1 = std::max(x0, exact_index(r.xmax, n, r.xmax != r.xmin));
    const long y1 = std::max(y0, exact_index(r.ymax, n, r.ymax != r.ymin));
    for (long x = x0; x <= x1; ++x)
      for (long y = y0; y <= y1; ++y) raw.insert({x, y});
    for (const auto& g : unit.exact_maps()) {
      const Rational ex = f.apply_x(g.fixed_x()), ey = f.apply_y(g.fixed_y());
      pts.insert({std::clamp(exact_index(ex, n, false), x0, x1), std::clamp(exact_index(ey, n, false), y0, y1)});
    }
  };
  rec(rec, ExactAffineMap::identity(), 0);
  return {raw.size(), pts.size()};
}

}  // namespace

TEST_CASE("Morton keys round-trip and dyadic indices clamp") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto x = static_cast<std::uint32_t>(rng.next());
    const auto y = static_cast<std::uint32_t>(rng.next());
    CHECK(morton_decode(morton_key(x, y)) == std::pair{x, y});
  }
  CHECK(morton_key(1, 0) == 1);
  CHECK(morton_key(0, 1) == 2);
  CHECK(dyadic_index(-0.1, 3) == 0);
  CHECK(dyadic_index(1.0, 3) == 7);
  CHECK(dyadic_index(0.5, 1) == 1);
  CHECK(dyadic_index(0.49999, 1) == 0);
}

TEST_CASE("point counts follow the half-open convention") {
  CHECK(box_count(std::vector<Point2>{{0.5, 0.5}}, 1).count == 1);
  const auto c = DyadicCover::from_points({{0.5, 0.5}}, 1);
  CHECK(c.raw().front() == morton_key(1, 1));
  // The top and right faces of the unit square are closed.
  CHECK(DyadicCover::from_points({{1.0, 1.0}}, 2).raw().front() == morton_key(3, 3));
}

TEST_CASE("square and segment counts") {
  const auto sq = carpet_cover(fixture("square"), 6);
  const auto seg = carpet_cover(fixture("segment"), 6);
  for (int n = 0; n <= 6; ++n) {
    CHECK(sq.coarsen(n).count().count == (std::uint64_t{1} << (2 * n)));
    CHECK(seg.coarsen(n).count().count == (std::uint64_t{1} << n));
  }
  CHECK(minkowski_estimate(sq, 3, 6).value == doctest::Approx(2.0));
  CHECK(minkowski_estimate(seg, 3, 6).value == doctest::Approx(1.0));
}

TEST_CASE("certified cover counts sit between plain enumeration bounds") {
  const auto unit = normalized_to_unit_square(fixture("centre_line"));
  const int n = 4, m = 8;
  REQUIRE(certified_cover_depth(unit, n) <= m);
  const auto c = box_count(unit, n, m);
  const auto [brute_raw, brute_pts] = brute_counts(unit, n, m);
  CHECK(c.count >= c.adjusted);
  CHECK(c.count <= brute_raw);
  CHECK(c.adjusted >= brute_pts);
  CHECK_THROWS_WITH_AS(box_count(unit, 9, 2), doctest::Contains("ResolutionTooCoarse"), Error);
}

TEST_CASE("counts grow at most fourfold per level") {
  const auto cover = carpet_cover(fixture("two_gap"), 9);
  for (int n = 0; n < 9; ++n) {
    const auto a = cover.coarsen(n).count().count, b = cover.coarsen(n + 1).count().count;
    CHECK(b >= a);
    CHECK(b <= 4 * a);
  }
}

TEST_CASE("estimate ordering on centre_line") {
  const auto spec = fixture("centre_line");
  const auto mk = minkowski_estimate(spec, 3, 9);
  CHECK(mk.lower_slope <= mk.value);
  CHECK(mk.value <= mk.upper_slope);
  const auto as = assouad_estimate(spec, 3, {{1, 9}, {2, 10}, {3, 11}});
  CHECK(as.value >= mk.value - 0.05);
  CHECK(as.value >= mk.upper_slope - 0.05);
  CHECK(as.adjusted <= as.value);
}

TEST_CASE("Assouad estimate for the segment and the square") {
  CHECK(assouad_estimate(fixture("segment"), 3, {{1, 9}, {2, 10}}).value == doctest::Approx(1.0).epsilon(0.1));
  CHECK(assouad_estimate(fixture("square"), 2, {{1, 9}}).value == doctest::Approx(2.0).epsilon(0.05));
  CHECK_THROWS_AS(assouad_schedule(normalized_to_unit_square(fixture("square")), 1, {{3, 4}}), Error);
}

TEST_CASE("microset counts on the Cantor product match a window brute force") {
  const auto unit = normalized_to_unit_square(fixture("cantor_product"));
  const int budget = 4, n_hi = 4;
  const auto cover = carpet_cover(unit, budget + n_hi);
  const auto res = microset_search(cover, 1, n_hi, budget);
  // Oracle: every dyadic window of depth <= 4, counted from depth-4 rectangles.
  for (int n = 1; n <= n_hi; ++n) {
    std::size_t best = 0;
    for (int j = 0; j <= budget; ++j) {
      std::set<std::pair<long, long>> cells;
      BudgetCounter b(unit.budget());
      for_each_word(
          unit, 4, b, [](const Word&, const AffineMap2D&) { return true; },
          [&](const Word&, const AffineMap2D& f) { overlapped_cells(f.image(unit.q()), j + n, cells); });
      std::map<std::pair<long, long>, std::size_t> per_window;
      for (const auto& [x, y] : cells) ++per_window[{x >> n, y >> n}];
      for (const auto& [w, count] : per_window) best = std::max(best, count);
    }
    CAPTURE(n);
    CHECK(res.best_counts[static_cast<std::size_t>(n - 1)].count == best);
  }
  // Rescaling along even levels reproduces the set.
  for (int n : {2, 4}) {
    CHECK(res.best_counts[static_cast<std::size_t>(n - 1)].count == cover.coarsen(n).count().count);
  }
}

TEST_CASE("microset search is monotone in the window budget") {
  const auto cover = carpet_cover(fixture("centre_line"), 10);
  const auto small = microset_search(cover, 3, 5, 2);
  const auto large = microset_search(cover, 3, 5, 5);
  for (std::size_t k = 0; k < small.best_counts.size(); ++k) {
    CHECK(large.best_counts[k].count >= small.best_counts[k].count);
    if (k > 0) CHECK(large.best_counts[k].count >= large.best_counts[k - 1].count);
  }
  // The identity window is admissible.
  CHECK(microset_search(cover, 3, 3, 6 - 3).best_counts[0].count >= cover.coarsen(3).count().count);
  CHECK(large.lambda == std::ldexp(1.0, large.window_depth));
}

TEST_CASE("microset gap on the square and the segment") {
  for (const char* name : {"square", "segment"}) {
    const auto spec = fixture(name);
    const auto cover = carpet_cover(spec, 9);
    const auto gap = microset_dimension_gap(microset_search(cover, 3, 5, 3), assouad_estimate(spec, 2, {{1, 9}}), 0.1);
    CAPTURE(name);
    CHECK(gap.pass);
    CHECK(gap.microset_slope == doctest::Approx(std::string(name) == "square" ? 2.0 : 1.0));
  }
}
