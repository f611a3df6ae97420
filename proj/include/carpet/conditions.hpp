#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carpet/ifs.hpp"
#include "carpet/interval_union.hpp"
#include "carpet/rational.hpp"

namespace carpet {

using ExactIntervalUnion = BasicIntervalUnion<Rational>;

enum class Verdict { Holds, Fails, Uncertified };

std::string verdict_name(Verdict v);

// A set of abscissae where a condition fails: an interval with each end open
// or closed. For H1 the witness is the offending map label, lo == hi == i.
struct Witness {
  Rational lo;
  Rational hi;
  bool lo_open = false;
  bool hi_open = false;
};

struct CheckResult {
  Verdict verdict = Verdict::Uncertified;
  std::vector<Witness> witnesses;
  int certification_depth = 0;
};

struct ConditionOptions {
  // Use rational endpoints when the hull of E is known exactly.
  bool exact = true;
  // Endpoint merge tolerance for the floating sweep.
  double merge_tol = 1e-12;
};

struct HorizontalProjection {
  IntervalUnion1D outer;
  IntervalUnion1D certified_gaps;  // closures of the open gaps
  // Present when computed in exact arithmetic.
  std::optional<ExactIntervalUnion> exact_outer;
  std::optional<ExactIntervalUnion> exact_gaps;
  int depth = 0;
};

// Union of the x-projections of the depth-m construction rectangles, via
// P_m = ∪ φ_i^x(P_{m-1}) starting from [h,h'].
HorizontalProjection horizontal_projection(const CarpetSpec& spec, int depth, const ConditionOptions& opts = {});

CheckResult check_H1(const CarpetSpec& spec);
CheckResult check_H2(const CarpetSpec& spec, const ConditionOptions& opts = {});
CheckResult check_H2prime(const CarpetSpec& spec, int depth, const ConditionOptions& opts = {});
CheckResult check_H2doubleprime(const CarpetSpec& spec, const ConditionOptions& opts = {});

// Whether the vertical line at x meets E's projection per the depth-m outer set.
bool projection_contains(const HorizontalProjection& p, double x);

}  // namespace carpet
