#include "carpet/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "carpet/error.hpp"
#include "carpet/sampling.hpp"

namespace carpet {

namespace {

std::uint64_t spread(std::uint32_t v) {
  std::uint64_t x = v;
  x = (x | (x << 16)) & 0x0000FFFF0000FFFFULL;
  x = (x | (x << 8)) & 0x00FF00FF00FF00FFULL;
  x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0FULL;
  x = (x | (x << 2)) & 0x3333333333333333ULL;
  x = (x | (x << 1)) & 0x5555555555555555ULL;
  return x;
}

std::uint32_t compact(std::uint64_t x) {
  x &= 0x5555555555555555ULL;
  x = (x | (x >> 1)) & 0x3333333333333333ULL;
  x = (x | (x >> 2)) & 0x0F0F0F0F0F0F0F0FULL;
  x = (x | (x >> 4)) & 0x00FF00FF00FF00FFULL;
  x = (x | (x >> 8)) & 0x0000FFFF0000FFFFULL;
  x = (x | (x >> 16)) & 0x00000000FFFFFFFFULL;
  return static_cast<std::uint32_t>(x);
}

void sort_unique(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<std::uint64_t> shifted(const std::vector<std::uint64_t>& keys, int levels) {
  std::vector<std::uint64_t> out;
  out.reserve(keys.size());
  const int s = 2 * levels;
  for (auto k : keys) {
    const auto c = k >> s;
    if (out.empty() || out.back() != c) out.push_back(c);
  }
  return out;
}

// Index of the last cell a closed interval ending at v overlaps with positive length.
std::uint32_t upper_index(double lo, double v, int level) {
  const double scaled = std::ldexp(v, level);
  if (v > lo && scaled == std::floor(scaled) && scaled > 0.0) return dyadic_index(std::ldexp(scaled - 1.0, -level), level);
  return dyadic_index(v, level);
}

// 2D prefix sums of a key set at its level, for box counts.
class BoxCounter {
 public:
  BoxCounter(const std::vector<std::uint64_t>& keys, int level) : side_(std::uint32_t{1} << level), level_(level) {
    const std::size_t w = side_ + 1;
    sums_.assign(w * w, 0);
    for (auto k : keys) {
      const auto [ix, iy] = morton_decode(k);
      sums_[(iy + 1) * w + ix + 1] = 1;
    }
    for (std::size_t y = 1; y < w; ++y) {
      for (std::size_t x = 1; x < w; ++x) {
        sums_[y * w + x] += sums_[(y - 1) * w + x] + sums_[y * w + x - 1] - sums_[(y - 1) * w + x - 1];
      }
    }
  }

  // Cubes of the set meeting [x0,x1] × [y0,y1].
  std::uint64_t count(double x0, double x1, double y0, double y1) const {
    const std::size_t w = side_ + 1;
    const std::size_t ax = dyadic_index(x0, level_), bx = dyadic_index(x1, level_) + 1;
    const std::size_t ay = dyadic_index(y0, level_), by = dyadic_index(y1, level_) + 1;
    return sums_[by * w + bx] - sums_[ay * w + bx] - sums_[by * w + ax] + sums_[ay * w + ax];
  }

 private:
  std::uint32_t side_;
  int level_;
  std::vector<std::uint32_t> sums_;
};

}  // namespace

std::uint32_t dyadic_index(double v, int level) {
  const double scaled = std::floor(std::ldexp(v, level));
  const double top = std::ldexp(1.0, level) - 1.0;
  if (!(scaled > 0.0)) return 0;
  return static_cast<std::uint32_t>(std::min(scaled, top));
}

std::uint64_t morton_key(std::uint32_t ix, std::uint32_t iy) { return spread(ix) | (spread(iy) << 1); }

std::pair<std::uint32_t, std::uint32_t> morton_decode(std::uint64_t key) { return {compact(key), compact(key >> 1)}; }

DyadicCover::DyadicCover(int level, std::vector<std::uint64_t> raw, std::vector<std::uint64_t> adjusted)
    : level_(level), raw_(std::move(raw)), adjusted_(std::move(adjusted)) {
  sort_unique(raw_);
  sort_unique(adjusted_);
}

DyadicCover DyadicCover::from_points(const std::vector<Point2>& pts, int level) {
  std::vector<std::uint64_t> keys;
  keys.reserve(pts.size());
  for (const auto& p : pts) keys.push_back(morton_key(dyadic_index(p.x, level), dyadic_index(p.y, level)));
  return DyadicCover(level, keys, keys);
}

DyadicCover DyadicCover::coarsen(int level) const {
  if (level > level_ || level < 0) throw Error(Errc::InvalidArgument, "can only coarsen to a lower level");
  DyadicCover out;
  out.level_ = level;
  out.raw_ = shifted(raw_, level_ - level);
  out.adjusted_ = shifted(adjusted_, level_ - level);
  return out;
}

int certified_cover_depth(const CarpetSpec& spec, int level) {
  const double target = std::ldexp(1.0, -level) / 4.0;
  double size = spec.diam_q();
  int m = 0;
  while (!(size < target)) {
    size *= spec.contraction();
    ++m;
  }
  return m;
}

DyadicCover carpet_cover(const CarpetSpec& unit_spec, int level, int depth) {
  if (level < 0 || level > 31) throw Error(Errc::InvalidArgument, "dyadic level must lie in [0,31]");
  const auto projection = certified_projection(unit_spec);
  std::vector<std::uint64_t> raw, adj;
  BudgetCounter budget(unit_spec.budget());
  const Rect& q = unit_spec.q();
  auto mark = [&](std::uint32_t ix, std::uint32_t iy) {
    const auto k = morton_key(ix, iy);
    raw.push_back(k);
    adj.push_back(k);
  };
  auto rec = [&](auto&& self, const AffineMap2D& f, int l) -> void {
    budget.tick();
    const Rect r = f.image(q);
    const auto ix0 = dyadic_index(r.xmin, level), ix1 = upper_index(r.xmin, r.xmax, level);
    const auto iy0 = dyadic_index(r.ymin, level), iy1 = upper_index(r.ymin, r.ymax, level);
    if (ix0 == ix1 && iy0 == iy1) {
      mark(ix0, iy0);
      return;
    }
    if (projection && iy0 == iy1) {
      for (const auto& iv : projection->intervals()) {
        const auto img = f.image_x(iv);
        const auto a = dyadic_index(img.lo, level), b = upper_index(img.lo, img.hi, level);
        budget.tick(b - a + 1);
        for (auto ix = a; ix <= b; ++ix) mark(ix, iy0);
      }
      return;
    }
    if (l == depth) {
      for (auto ix = ix0; ix <= ix1; ++ix) {
        for (auto iy = iy0; iy <= iy1; ++iy) raw.push_back(morton_key(ix, iy));
      }
      for (const auto& p : unit_spec.fixed_points()) {
        // Same edge attribution as the raw cells, so adjusted never exceeds raw.
        const Point2 e = apply(f, p);
        adj.push_back(morton_key(std::clamp(dyadic_index(e.x, level), ix0, ix1),
                                 std::clamp(dyadic_index(e.y, level), iy0, iy1)));
      }
      return;
    }
    for (const auto& g : unit_spec.maps()) self(self, f * g, l + 1);
  };
  rec(rec, AffineMap2D::identity(), 0);
  return DyadicCover(level, std::move(raw), std::move(adj));
}

DyadicCover carpet_cover(const CarpetSpec& spec, int level) {
  const CarpetSpec unit = normalized_to_unit_square(spec);
  return carpet_cover(unit, level, certified_cover_depth(unit, level));
}

DyadicCount box_count(const std::vector<Point2>& pts, int level) {
  return DyadicCover::from_points(pts, level).count();
}

DyadicCount box_count(const CarpetSpec& spec, int level, int depth) {
  if (depth < certified_cover_depth(spec, level)) {
    throw Error(Errc::ResolutionTooCoarse, "cover depth too shallow for a certified count at this level");
  }
  return carpet_cover(spec, level, depth).count();
}

double log2_slope(const std::vector<std::pair<int, double>>& pts) {
  if (pts.size() < 2) throw Error(Errc::InvalidArgument, "a slope needs at least two levels");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, c] : pts) {
    const double y = std::log2(c);
    sx += n;
    sy += y;
    sxx += static_cast<double>(n) * n;
    sxy += n * y;
  }
  const double m = static_cast<double>(pts.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

DimensionEstimate minkowski_estimate(const DyadicCover& finest, int level_lo, int level_hi, int span) {
  if (level_lo >= level_hi || level_hi > finest.level()) {
    throw Error(Errc::InvalidArgument, "need level_lo < level_hi <= cover level");
  }
  if (span == 0) span = std::max(1, (level_hi - level_lo + 1) / 2);
  if (span < 0 || span > level_hi - level_lo) throw Error(Errc::InvalidArgument, "slope span outside the level range");
  std::vector<std::pair<int, double>> raw, adj;
  for (int n = level_lo; n <= level_hi; ++n) {
    const auto c = finest.coarsen(n).count();
    raw.emplace_back(n, static_cast<double>(c.count));
    adj.emplace_back(n, static_cast<double>(c.adjusted));
  }
  DimensionEstimate out;
  out.method = "minkowski";
  out.level_lo = level_lo;
  out.level_hi = level_hi;
  out.samples = raw.size();
  out.value = log2_slope(raw);
  out.adjusted = log2_slope(adj);
  out.lower_slope = std::numeric_limits<double>::infinity();
  out.upper_slope = -std::numeric_limits<double>::infinity();
  const auto gap = static_cast<std::size_t>(span);
  for (std::size_t k = gap; k < raw.size(); ++k) {
    const double s = std::log2(raw[k].second / raw[k - gap].second) / span;
    out.lower_slope = std::min(out.lower_slope, s);
    out.upper_slope = std::max(out.upper_slope, s);
  }
  return out;
}

DimensionEstimate minkowski_estimate(const CarpetSpec& spec, int level_lo, int level_hi, int span) {
  return minkowski_estimate(carpet_cover(spec, level_hi), level_lo, level_hi, span);
}

std::vector<AssouadSample> assouad_schedule(const CarpetSpec& unit_spec, int center_depth,
                                            const std::vector<std::pair<int, int>>& scales) {
  for (const auto& [a, b] : scales) {
    if (b - a < 2 || a < 0) throw Error(Errc::InvalidArgument, "need R/r >= 4 and R <= 1");
  }
  std::vector<AssouadSample> out;
  BudgetCounter budget(unit_spec.budget());
  const Point2 seed = unit_spec.fixed_points().front();
  for_each_word(
      unit_spec, center_depth, budget, [](const Word&, const AffineMap2D&) { return true; },
      [&](const Word&, const AffineMap2D& f) {
        const Point2 c = apply(f, seed);
        for (const auto& [a, b] : scales) out.push_back({c, a, b});
      });
  return out;
}

DimensionEstimate assouad_estimate(const DyadicCover& cover, const std::vector<AssouadSample>& schedule) {
  if (schedule.empty()) throw Error(Errc::EmptyInput, "empty Assouad schedule");
  DimensionEstimate out;
  out.method = "assouad";
  out.samples = schedule.size();
  out.level_lo = std::numeric_limits<int>::max();
  out.level_hi = 0;
  for (const auto& s : schedule) {
    out.level_lo = std::min(out.level_lo, s.b - 1);
    out.level_hi = std::max(out.level_hi, s.b - 1);
  }
  if (out.level_hi > cover.level()) throw Error(Errc::InvalidArgument, "cover is coarser than the schedule");
  std::vector<std::pair<BoxCounter, BoxCounter>> counters;
  std::vector<int> levels;
  for (int l = out.level_lo; l <= out.level_hi; ++l) {
    const auto c = cover.coarsen(l);
    counters.emplace_back(BoxCounter(c.raw(), l), BoxCounter(c.adjusted(), l));
  }
  out.value = 0.0;
  out.adjusted = 0.0;
  out.lower_slope = std::numeric_limits<double>::infinity();
  for (const auto& s : schedule) {
    const auto& [raw, adj] = counters[static_cast<std::size_t>(s.b - 1 - out.level_lo)];
    const double R = std::ldexp(1.0, -s.a);
    const double x0 = s.center.x - R, x1 = s.center.x + R, y0 = s.center.y - R, y1 = s.center.y + R;
    const double scale = static_cast<double>(s.b - s.a);
    const double v = std::log2(static_cast<double>(std::max<std::uint64_t>(1, raw.count(x0, x1, y0, y1)))) / scale;
    const double va = std::log2(static_cast<double>(std::max<std::uint64_t>(1, adj.count(x0, x1, y0, y1)))) / scale;
    out.value = std::max(out.value, v);
    out.adjusted = std::max(out.adjusted, va);
    out.lower_slope = std::min(out.lower_slope, v);
  }
  out.upper_slope = out.value;
  return out;
}

DimensionEstimate assouad_estimate(const CarpetSpec& spec, int center_depth,
                                   const std::vector<std::pair<int, int>>& scales) {
  const CarpetSpec unit = normalized_to_unit_square(spec);
  const auto schedule = assouad_schedule(unit, center_depth, scales);
  int level = 0;
  for (const auto& s : schedule) level = std::max(level, s.b - 1);
  return assouad_estimate(carpet_cover(unit, level, certified_cover_depth(unit, level)), schedule);
}

MicrosetResult microset_search(const DyadicCover& finest, int n_lo, int n_hi, int window_budget) {
  if (n_lo < 0 || n_lo > n_hi || window_budget < 0) throw Error(Errc::InvalidArgument, "bad microset range");
  if (window_budget + n_hi > finest.level()) throw Error(Errc::InvalidArgument, "cover too coarse for the search");
  MicrosetResult out;
  const std::size_t nn = static_cast<std::size_t>(n_hi - n_lo + 1);
  out.best_counts.resize(nn);
  for (std::size_t k = 0; k < nn; ++k) out.best_counts[k].level = n_lo + static_cast<int>(k);
  std::uint64_t best_top = 0;
  for (int j = 0; j <= window_budget; ++j) {
    const auto windows = finest.coarsen(j);
    out.windows += windows.raw().size();
    // counts[n][w] for the raw cover, adj likewise.
    std::vector<std::vector<std::uint64_t>> counts(nn, std::vector<std::uint64_t>(windows.raw().size(), 0));
    for (std::size_t k = 0; k < nn; ++k) {
      const int n = n_lo + static_cast<int>(k);
      const auto level = finest.coarsen(j + n);
      std::size_t w = 0;
      for (auto key : level.raw()) {
        const auto parent = key >> (2 * n);
        while (windows.raw()[w] != parent) ++w;
        ++counts[k][w];
      }
      std::uint64_t adj_best = 0;
      for (std::size_t a = 0, run = 0; a < level.adjusted().size(); ++a) {
        ++run;
        if (a + 1 == level.adjusted().size() || (level.adjusted()[a + 1] >> (2 * n)) != (level.adjusted()[a] >> (2 * n))) {
          adj_best = std::max<std::uint64_t>(adj_best, run);
          run = 0;
        }
      }
      out.best_counts[k].adjusted = std::max(out.best_counts[k].adjusted, adj_best);
      for (auto c : counts[k]) out.best_counts[k].count = std::max(out.best_counts[k].count, c);
    }
    for (std::size_t w = 0; w < windows.raw().size(); ++w) {
      if (counts[nn - 1][w] > best_top) {
        best_top = counts[nn - 1][w];
        const auto [ix, iy] = morton_decode(windows.raw()[w]);
        out.window_depth = j;
        out.window_x = ix;
        out.window_y = iy;
        out.lambda = std::ldexp(1.0, j);
        out.z = {0.0 - static_cast<double>(ix), 0.0 - static_cast<double>(iy)};
        out.counts.clear();
        for (std::size_t k = 0; k < nn; ++k) out.counts.emplace_back(n_lo + static_cast<int>(k), counts[k][w]);
      }
    }
  }
  return out;
}

MicrosetResult microset_search(const CarpetSpec& spec, int n_lo, int n_hi, int window_budget) {
  return microset_search(carpet_cover(spec, window_budget + n_hi), n_lo, n_hi, window_budget);
}

MicrosetGap microset_dimension_gap(const MicrosetResult& micro, const DimensionEstimate& assouad, double tolerance) {
  MicrosetGap gap;
  std::vector<std::pair<int, double>> raw, adj;
  for (const auto& c : micro.best_counts) {
    raw.emplace_back(c.level, static_cast<double>(c.count));
    adj.emplace_back(c.level, static_cast<double>(std::max<std::uint64_t>(1, c.adjusted)));
  }
  gap.microset_slope = log2_slope(raw);
  gap.microset_slope_adjusted = log2_slope(adj);
  gap.assouad = assouad;
  gap.tolerance = tolerance;
  gap.pass = gap.microset_slope >= assouad.value - tolerance;
  return gap;
}

}  // namespace carpet
