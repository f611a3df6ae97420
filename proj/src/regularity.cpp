#include "carpet/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "carpet/conditions.hpp"
#include "carpet/error.hpp"
#include "carpet/geometry.hpp"
#include "carpet/rng.hpp"
#include "carpet/sampling.hpp"

namespace carpet {

namespace {

void check_inputs(const IntervalUnion1D& s, const ScaleRange& range, double resolution) {
  if (s.empty()) throw Error(Errc::EmptyInput, "regularity estimate of an empty set");
  if (!(range.r_min > 0 && range.r_min <= range.r_max)) {
    throw Error(Errc::InvalidArgument, "scale range must satisfy 0 < r_min <= r_max");
  }
  if (range.r_min <= resolution) {
    throw Error(Errc::ResolutionTooCoarse, "r_min " + std::to_string(range.r_min) + " is not above the resolution " +
                                               std::to_string(resolution));
  }
}

std::vector<double> centers(const IntervalUnion1D& s, std::size_t max_centers) {
  std::vector<double> out;
  const std::size_t n = s.size();
  const std::size_t m = std::min(n, std::max<std::size_t>(max_centers, 1));
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& iv = s[k * n / m];
    out.push_back(0.5 * (iv.lo + iv.hi));
  }
  return out;
}

std::vector<double> radii(const ScaleRange& range, std::size_t count) {
  std::vector<double> out;
  if (count <= 1 || range.r_min == range.r_max) return {range.r_min};
  const double ratio = std::log(range.r_max / range.r_min) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) out.push_back(range.r_min * std::exp(ratio * static_cast<double>(k)));
  out.back() = range.r_max;
  return out;
}

// First interval whose right end reaches a.
std::vector<Interval1D>::const_iterator first_reaching(const IntervalUnion1D& s, double a) {
  return std::lower_bound(s.intervals().begin(), s.intervals().end(), a,
                          [](const Interval1D& iv, double v) { return iv.hi < v; });
}

double largest_hole(const IntervalUnion1D& s, double a, double b) {
  double cursor = a;
  double best = 0.0;
  for (auto it = first_reaching(s, a); it != s.intervals().end() && it->lo <= b; ++it) {
    best = std::max(best, it->lo - cursor);
    cursor = std::max(cursor, it->hi);
  }
  return std::max(best, b - cursor);
}

}  // namespace

double porosity_estimate(const IntervalUnion1D& s, const ScaleRange& range, const EstimateGrid& grid,
                         double resolution) {
  check_inputs(s, range, resolution);
  double inf = std::numeric_limits<double>::infinity();
  for (double x : centers(s, grid.max_centers)) {
    for (double r : radii(range, grid.radii)) inf = std::min(inf, largest_hole(s, x - r, x + r) / (2.0 * r));
  }
  return inf;
}

double uniform_perfectness_estimate(const IntervalUnion1D& s, const ScaleRange& range, const EstimateGrid& grid,
                                    double resolution) {
  check_inputs(s, range, resolution);
  const auto hull = s.hull();
  double sup = 1.0;
  for (double x : centers(s, grid.max_centers)) {
    for (double r : radii(range, grid.radii)) {
      if (hull.lo >= x - r && hull.hi <= x + r) continue;
      const auto first = first_reaching(s, x - r);
      auto last = std::upper_bound(s.intervals().begin(), s.intervals().end(), x + r,
                                   [](double v, const Interval1D& iv) { return v < iv.lo; });
      if (first == s.intervals().end() || last == s.intervals().begin()) continue;
      --last;
      const double s_min = std::max(first->lo, x - r);
      const double s_max = std::min(last->hi, x + r);
      const double rho = std::max(x - s_min, s_max - x);
      sup = std::max(sup, rho > 0 ? r / rho : std::numeric_limits<double>::infinity());
    }
  }
  return sup;
}

RegularityBounds regularity_bounds(const CarpetSpec& spec) {
  RegularityBounds b;
  const double delta = spec.delta().lo;
  b.porosity = std::min(delta, 1.0) / 4.0;
  if (!(delta > 0)) {
    b.perfectness = std::numeric_limits<double>::infinity();
    return b;
  }
  double a = 1.0;
  while (!(a < delta)) {
    a *= spec.alpha_bar();
    ++b.k;
  }
  b.perfectness = 1.0 / (delta * std::pow(spec.alpha_under(), b.k + 1));
  return b;
}

RegularityReport assess_regularity(const IntervalUnion1D& s, double x, double resolution, const ScaleRange& range,
                                   const RegularityBounds& bounds, const EstimateGrid& grid) {
  RegularityReport r;
  r.x = x;
  r.scale_range = range;
  r.resolution = resolution;
  r.bounds = bounds;
  r.porosity_const = porosity_estimate(s, range, grid, resolution);
  r.perfectness_const = uniform_perfectness_estimate(s, range, grid, resolution);
  r.slack = 2.0 * resolution / range.r_min;
  r.porosity_ok = r.porosity_const >= bounds.porosity - r.slack;
  r.perfectness_ok = r.perfectness_const <= bounds.perfectness + r.slack;
  return r;
}

ScaleRange default_scale_range(const CarpetSpec& spec, int depth) {
  const double a = spec.alpha_bar();
  return {std::pow(a, depth - 2) * spec.diam_q(), a * a * spec.diam_q()};
}

std::vector<RegularityReport> verify_slice_regularity(const CarpetSpec& spec, const std::vector<double>& abscissae,
                                                      int depth, std::optional<ScaleRange> range,
                                                      const EstimateGrid& grid) {
  if (!spec.ssc().certified) throw Error(Errc::InvalidArgument, "slice regularity needs certified SSC");
  if (check_H2(spec).verdict != Verdict::Holds && check_H2doubleprime(spec).verdict != Verdict::Holds) {
    throw Error(Errc::InvalidArgument, "slice regularity needs H2 or H2''");
  }
  const ScaleRange sr = range.value_or(default_scale_range(spec, depth));
  const RegularityBounds bounds = regularity_bounds(spec);
  std::vector<RegularityReport> out;
  for (double x : abscissae) {
    const auto slice = vertical_slice_cover(spec, x, depth);
    if (slice.set.empty()) throw Error(Errc::EmptyInput, "empty slice at x=" + std::to_string(x));
    out.push_back(assess_regularity(slice.set, x, slice.resolution, sr, bounds, grid));
  }
  return out;
}

std::vector<double> slice_abscissae(const CarpetSpec& spec, std::size_t count, std::uint64_t seed) {
  const auto proj = certified_projection(spec);
  const IntervalUnion1D p = proj ? *proj : horizontal_projection(spec, 1, {}).outer;
  Rng rng(seed);
  std::vector<double> out;
  const double total = p.measure();
  for (std::size_t k = 0; k < count; ++k) {
    double u = rng.uniform() * total;
    for (const auto& iv : p.intervals()) {
      if (u <= iv.length()) {
        out.push_back(iv.lo + u);
        break;
      }
      u -= iv.length();
    }
  }
  return out;
}

}  // namespace carpet
