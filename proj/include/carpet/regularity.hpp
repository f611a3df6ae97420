#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "carpet/ifs.hpp"
#include "carpet/interval_union.hpp"

namespace carpet {

struct ScaleRange {
  double r_min = 0.0;
  double r_max = 0.0;
};

struct EstimateGrid {
  std::size_t radii = 24;         // geometric grid over the scale range
  std::size_t max_centers = 4096;  // centres are interval midpoints, thinned evenly
};

// inf over sampled (x, r) of (longest subinterval of (x-r, x+r) \ S)/(2r).
double porosity_estimate(const IntervalUnion1D& s, const ScaleRange& range, const EstimateGrid& grid = {},
                         double resolution = 0.0);

// sup over sampled (x, r) with S ⊄ B(x,r) of the least D for which the
// annulus B(x,r) \ B(x,r/D) meets S. The least D is r/ρ with ρ the largest
// |s-x| ≤ r over s ∈ S, so no search over D is needed.
double uniform_perfectness_estimate(const IntervalUnion1D& s, const ScaleRange& range, const EstimateGrid& grid = {},
                                    double resolution = 0.0);

struct RegularityBounds {
  double porosity = 0.0;     // min{δ,1}/4
  double perfectness = 0.0;  // δ⁻¹ α̲^{-(k+1)}
  int k = 0;                 // smallest k with ᾱ^k < δ
};

// Bounds evaluated with the certified δ_lo.
RegularityBounds regularity_bounds(const CarpetSpec& spec);

struct RegularityReport {
  double x = 0.0;
  double porosity_const = 0.0;
  double perfectness_const = 0.0;
  ScaleRange scale_range;
  double resolution = 0.0;
  double slack = 0.0;
  RegularityBounds bounds;
  bool porosity_ok = false;
  bool perfectness_ok = false;

  bool pass() const noexcept { return porosity_ok && perfectness_ok; }
};

// Runs both estimators on a set known up to `resolution` and compares them
// with the bounds, allowing slack = 2·resolution/r_min.
RegularityReport assess_regularity(const IntervalUnion1D& s, double x, double resolution, const ScaleRange& range,
                                   const RegularityBounds& bounds, const EstimateGrid& grid = {});

// [ᾱ^{depth-2}, ᾱ²]·diam(Q).
ScaleRange default_scale_range(const CarpetSpec& spec, int depth);

std::vector<RegularityReport> verify_slice_regularity(const CarpetSpec& spec, const std::vector<double>& abscissae,
                                                      int depth, std::optional<ScaleRange> range = std::nullopt,
                                                      const EstimateGrid& grid = {});

// Deterministic abscissae spread over the projection of E.
std::vector<double> slice_abscissae(const CarpetSpec& spec, std::size_t count, std::uint64_t seed);

}  // namespace carpet
