#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "carpet/affine.hpp"
#include "carpet/ifs.hpp"

namespace carpet {

// Level-n dyadic cubes [k2^-n,(k+1)2^-n) × [l2^-n,(l+1)2^-n), with the right
// and top faces of [0,1]² closed, so the cubes partition the unit square.
std::uint32_t dyadic_index(double v, int level);
std::uint64_t morton_key(std::uint32_t ix, std::uint32_t iy);
std::pair<std::uint32_t, std::uint32_t> morton_decode(std::uint64_t key);

struct DyadicCount {
  int level = 0;
  std::uint64_t count = 0;     // cubes meeting the cover (over-count of Ñ_n)
  std::uint64_t adjusted = 0;  // cubes certified to meet the set
};

// Sets of level-n cubes as sorted Morton keys.
class DyadicCover {
 public:
  DyadicCover() = default;
  DyadicCover(int level, std::vector<std::uint64_t> raw, std::vector<std::uint64_t> adjusted);

  static DyadicCover from_points(const std::vector<Point2>& pts, int level);

  int level() const noexcept { return level_; }
  const std::vector<std::uint64_t>& raw() const noexcept { return raw_; }
  const std::vector<std::uint64_t>& adjusted() const noexcept { return adjusted_; }

  // The same set viewed at a coarser level.
  DyadicCover coarsen(int level) const;
  DyadicCount count() const { return {level_, raw_.size(), adjusted_.size()}; }

 private:
  int level_ = 0;
  std::vector<std::uint64_t> raw_;
  std::vector<std::uint64_t> adjusted_;
};

// Smallest m with contraction^m · diam(Q) < 2^-n / 4.
int certified_cover_depth(const CarpetSpec& spec, int level);

// Cubes of the given level meeting E for a system already normalised into
// [0,1]². Construction rectangles are refined until they sit in one cube, or
// in one row when proj₁E is certified, or to `depth`. A rectangle whose right
// or top edge lies on a grid line is charged only to the cells it overlaps
// with positive length.
DyadicCover carpet_cover(const CarpetSpec& unit_spec, int level, int depth);
// Normalises first and uses the certified depth.
DyadicCover carpet_cover(const CarpetSpec& spec, int level);

DyadicCount box_count(const std::vector<Point2>& pts, int level);
DyadicCount box_count(const CarpetSpec& spec, int level, int depth);

struct DimensionEstimate {
  std::string method;
  double value = 0.0;
  double adjusted = 0.0;
  double lower_slope = 0.0;
  double upper_slope = 0.0;
  int level_lo = 0;
  int level_hi = 0;
  std::size_t samples = 0;
};

// Least-squares slope of log₂ counts over the cover's levels lo..hi, with the
// extreme two-point slopes (n, n+span) as lower/upper. span 0 picks half the
// number of levels; span 1 gives the raw consecutive slopes, which oscillate
// for self-affine sets.
DimensionEstimate minkowski_estimate(const DyadicCover& finest, int level_lo, int level_hi, int span = 0);
DimensionEstimate minkowski_estimate(const CarpetSpec& spec, int level_lo, int level_hi, int span = 0);

// A ball B(x, 2^-a) covered at scale r = 2^-b.
struct AssouadSample {
  Point2 center;  // in the normalised square
  int a = 0;
  int b = 0;
};

// Deterministic schedule: centres are construction-rectangle centres at
// `center_depth`, with every listed (a, b) pair.
std::vector<AssouadSample> assouad_schedule(const CarpetSpec& unit_spec, int center_depth,
                                            const std::vector<std::pair<int, int>>& scales);

// sup of log N / log(R/r), N counting side-2r cubes (level b-1) meeting the
// ℓ∞ ball of radius R. The cover must be at level max(b) - 1 or finer.
DimensionEstimate assouad_estimate(const DyadicCover& cover, const std::vector<AssouadSample>& schedule);
DimensionEstimate assouad_estimate(const CarpetSpec& spec, int center_depth,
                                   const std::vector<std::pair<int, int>>& scales);

struct MicrosetResult {
  int window_depth = 0;
  std::uint32_t window_x = 0;
  std::uint32_t window_y = 0;
  double lambda = 1.0;
  Point2 z;
  std::vector<std::pair<int, std::uint64_t>> counts;  // (n, Ñ_n) for the chosen window
  std::vector<DyadicCount> best_counts;               // max over windows, per n
  std::size_t windows = 0;                            // windows examined
};

// Dyadic windows D up to depth `window_budget` meeting E, rescaled onto
// [0,1]²; reports the best level-n counts for n in [n_lo, n_hi]. The chosen
// window maximises the count at n_hi, ties broken by depth then address.
MicrosetResult microset_search(const DyadicCover& finest, int n_lo, int n_hi, int window_budget);
MicrosetResult microset_search(const CarpetSpec& spec, int n_lo, int n_hi, int window_budget);

struct MicrosetGap {
  double microset_slope = 0.0;
  double microset_slope_adjusted = 0.0;
  DimensionEstimate assouad;
  double tolerance = 0.1;
  bool pass = false;
};

MicrosetGap microset_dimension_gap(const MicrosetResult& micro, const DimensionEstimate& assouad,
                                   double tolerance = 0.1);

// Least-squares slope of log₂(count) against level.
double log2_slope(const std::vector<std::pair<int, double>>& pts);

}  // namespace carpet
