#include <doctest.h>

#include <cmath>
#include <limits>

#include "carpet/error.hpp"
#include "carpet/geometry.hpp"
#include "carpet/regularity.hpp"
#include "support.hpp"

using namespace carpet;
using test_support::fixture;

namespace {

EstimateGrid radii_only(std::size_t n) {
  EstimateGrid g;
  g.radii = n;
  return g;
}

}  // namespace

TEST_CASE("porosity of a solid interval is zero") {
  const auto s = IntervalUnion1D::single(0.0, 1.0);
  CHECK(porosity_estimate(s, {0.01, 0.4}) == 0.0);
}

TEST_CASE("porosity of two points measures the hole against the diameter 2r") {
  const auto s = IntervalUnion1D({{0.0, 0.0}, {1.0, 1.0}});
  // B(0, 1/2) \ S has the hole (0, 1/2): half of the ball's diameter.
  CHECK(porosity_estimate(s, {0.5, 0.5}, radii_only(1)) == doctest::Approx(0.5));
}

TEST_CASE("porosity is antitone under enlargement on fixed centres") {
  const auto s = IntervalUnion1D({{0.0, 0.1}, {0.3, 0.35}, {0.6, 0.62}, {0.9, 1.0}});
  // Symmetric fattening keeps every midpoint, so the sample points agree.
  const auto bigger = epsilon_neighborhood(s, 0.02);
  REQUIRE(bigger.size() == s.size());
  const ScaleRange range{0.05, 0.3};
  CHECK(porosity_estimate(s, range) >= porosity_estimate(bigger, range));
}

TEST_CASE("perfectness of an interval is one") {
  CHECK(uniform_perfectness_estimate(IntervalUnion1D::single(0.0, 1.0), {0.01, 0.2}) == doctest::Approx(1.0));
}

TEST_CASE("an isolated point gives an unbounded annulus constant") {
  const auto s = IntervalUnion1D({{0.0, 0.0}, {0.5, 1.0}});
  CHECK(uniform_perfectness_estimate(s, {0.4, 0.4}, radii_only(1)) == std::numeric_limits<double>::infinity());
  // Once r passes 1/2 the annulus reaches [0.5, 1]; the witness D is r/ρ.
  const double d = uniform_perfectness_estimate(IntervalUnion1D({{0.0, 0.0}, {0.5, 0.6}}), {0.55, 0.55}, radii_only(1));
  CHECK(std::isfinite(d));
}

TEST_CASE("perfectness is monotone under grid refinement") {
  const auto s = vertical_slice(fixture("centre_line"), 0.3, 7);
  const ScaleRange range{std::pow(0.5, 5), 0.25};
  CHECK(uniform_perfectness_estimate(s, range, radii_only(9)) >=
        uniform_perfectness_estimate(s, range, radii_only(5)) - 1e-12);
}

TEST_CASE("resolution guard") {
  CHECK_THROWS_WITH_AS(porosity_estimate(IntervalUnion1D::single(0.0, 1.0), {0.01, 0.1}, {}, 0.02),
                       doctest::Contains("ResolutionTooCoarse"), Error);
  CHECK_THROWS_WITH_AS(porosity_estimate(IntervalUnion1D{}, {0.01, 0.1}), doctest::Contains("EmptyInput"), Error);
}

TEST_CASE("slice bounds for centre_line") {
  const auto s = fixture("centre_line");
  const auto b = regularity_bounds(s);
  CHECK(b.porosity == doctest::Approx(0.0125).epsilon(1e-8));
  CHECK(b.k == 5);
  CHECK(b.perfectness == doctest::Approx(1.0 / (s.delta().lo * std::pow(0.2, 6))));
  const auto rows = verify_slice_regularity(s, {0.25}, 8, ScaleRange{std::pow(0.5, 6), 0.25});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].porosity_const >= b.porosity);
  CHECK(rows[0].pass());
}

TEST_CASE("two_gap slices over the left block pass") {
  const auto s = fixture("two_gap");
  const auto rows = verify_slice_regularity(s, {0.05, 0.2, 0.35, 0.5, 0.58}, 8);
  for (const auto& r : rows) {
    CAPTURE(r.x);
    CHECK(r.pass());
  }
}

TEST_CASE("harness flags fake slices") {
  RegularityBounds b;
  b.porosity = 0.0125;
  b.perfectness = 50.0;
  const ScaleRange range{0.01, 0.2};
  // A huge gap: the annulus around the left block stays empty.
  const auto gap = assess_regularity(IntervalUnion1D({{0.0, 0.001}, {0.999, 1.0}}), 0.5, 1e-5, range, b);
  CHECK_FALSE(gap.perfectness_ok);
  // No holes at all.
  const auto solid = assess_regularity(IntervalUnion1D::single(0.0, 1.0), 0.5, 1e-5, range, b);
  CHECK_FALSE(solid.porosity_ok);
}
