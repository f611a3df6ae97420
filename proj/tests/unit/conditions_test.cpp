#include <doctest.h>

#include "carpet/conditions.hpp"
#include "carpet/geometry.hpp"
#include "carpet/sampling.hpp"
#include "support.hpp"

using namespace carpet;
using test_support::fixture;
using test_support::q;

TEST_CASE("two_gap: H2 fails on the projection gap, H2'' holds") {
  const auto s = fixture("two_gap");
  const auto h2 = check_H2(s);
  CHECK(h2.verdict == Verdict::Fails);
  REQUIRE(h2.witnesses.size() == 1);
  CHECK(h2.witnesses[0].lo == q("3/5"));
  CHECK(h2.witnesses[0].hi == q("4/5"));
  CHECK(h2.witnesses[0].lo_open);
  CHECK(h2.witnesses[0].hi_open);
  CHECK(check_H2doubleprime(s).verdict == Verdict::Holds);
  CHECK(check_H1(s).verdict == Verdict::Holds);
}

TEST_CASE("two_gap projection is exact at every depth") {
  const auto s = fixture("two_gap");
  const ExactIntervalUnion expected({{q("0"), q("3/5")}, {q("4/5"), q("1")}});
  for (int depth = 1; depth <= 6; ++depth) {
    const auto p = horizontal_projection(s, depth);
    REQUIRE(p.exact_outer);
    CHECK(*p.exact_outer == expected);
  }
}

TEST_CASE("shifted two_gap variant covers the whole base interval") {
  const auto s = fixture("two_gap_shifted");
  const auto p = horizontal_projection(s, 4);
  REQUIRE(p.exact_outer);
  CHECK(*p.exact_outer == ExactIntervalUnion({{q("0"), q("1")}}));
}

TEST_CASE("centre_line satisfies H1, H2 and H2'") {
  const auto s = fixture("centre_line");
  CHECK(check_H1(s).verdict == Verdict::Holds);
  CHECK(check_H2(s).verdict == Verdict::Holds);
  CHECK(check_H2prime(s, 3).verdict == Verdict::Holds);
  CHECK(check_H2doubleprime(s).verdict == Verdict::Holds);
}

TEST_CASE("H1 fails when some map contracts less vertically") {
  const auto s = validate_carpet(std::vector<ExactAffineMap>{{q("1/5"), q("1/2"), q("0"), q("0")},
                                                             {q("1/2"), q("1/5"), q("1/2"), q("1/2")}});
  const auto r = check_H1(s);
  CHECK(r.verdict == Verdict::Fails);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].lo == 1);  // first map, 1-based label
}

TEST_CASE("exact and floating sweeps agree") {
  for (const char* name : {"centre_line", "two_gap", "cantor_product"}) {
    const auto s = fixture(name);
    ConditionOptions f;
    f.exact = false;
    CAPTURE(name);
    CHECK(check_H2(s).verdict == check_H2(s, f).verdict);
    CHECK(check_H2doubleprime(s).verdict == check_H2doubleprime(s, f).verdict);
    const auto pe = horizontal_projection(s, 5);
    const auto pf = horizontal_projection(s, 5, f);
    REQUIRE(pe.outer.size() == pf.outer.size());
    for (std::size_t i = 0; i < pe.outer.size(); ++i) {
      CHECK(pe.outer[i].lo == doctest::Approx(pf.outer[i].lo));
      CHECK(pe.outer[i].hi == doctest::Approx(pf.outer[i].hi));
    }
  }
}

TEST_CASE("projections are nested outer sets containing sampled points") {
  const auto s = fixture("cantor_product");
  const auto pts = attractor_points(s, 5);
  IntervalUnion1D prev = horizontal_projection(s, 1).outer;
  for (int depth = 2; depth <= 5; ++depth) {
    const auto p = horizontal_projection(s, depth);
    CHECK(p.outer.subset_of(prev));
    CHECK(p.outer.measure() <= prev.measure());
    for (const auto& pt : pts.points) CHECK(projection_contains(p, pt.x));
    prev = p.outer;
  }
  CHECK(horizontal_projection(s, 3).outer.measure() == doctest::Approx(std::pow(0.5, 3)));
}

TEST_CASE("certified projection of the carpets") {
  CHECK(certified_projection(fixture("centre_line")) == IntervalUnion1D::single(0.0, 1.0));
  const auto p = certified_projection(fixture("two_gap"));
  REQUIRE(p);
  REQUIRE(p->size() == 2);
  CHECK((*p)[0].hi == doctest::Approx(0.6));
  CHECK((*p)[1].lo == doctest::Approx(0.8));
  CHECK_FALSE(certified_projection(fixture("cantor_product")));
}
