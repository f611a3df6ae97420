#include "carpet/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "carpet/conditions.hpp"
#include "carpet/error.hpp"

namespace carpet {

std::optional<IntervalUnion1D> certified_projection(const CarpetSpec& spec, int max_depth) {
  ConditionOptions opts;
  opts.exact = spec.bounding().exact.has_value();
  for (int m = 1; m <= max_depth; ++m) {
    const auto cur = horizontal_projection(spec, m, opts);
    const auto next = horizontal_projection(spec, m + 1, opts);
    const bool same = opts.exact ? *cur.exact_outer == *next.exact_outer : cur.outer == next.outer;
    if (same) return cur.outer;
  }
  return std::nullopt;
}

namespace {

struct GridKey {
  long long x;
  long long y;
  bool operator==(const GridKey&) const = default;
};

struct GridKeyHash {
  std::size_t operator()(const GridKey& k) const noexcept {
    return std::hash<long long>()(k.x * 0x9E3779B97F4A7C15LL ^ k.y);
  }
};

}  // namespace

PointSet2D sample_attractor(const CarpetSpec& spec, const Rect& region, double target,
                            const std::optional<IntervalUnion1D>& projection) {
  if (!(target > 0)) throw Error(Errc::InvalidArgument, "sampling target must be positive");
  PointSet2D out;
  BudgetCounter budget(spec.budget());
  const double cell = target / 8.0;
  std::unordered_set<GridKey, GridKeyHash> seen;
  auto emit = [&](const Point2& p) {
    const GridKey k{static_cast<long long>(std::floor(p.x / cell)), static_cast<long long>(std::floor(p.y / cell))};
    if (seen.insert(k).second) out.points.push_back(p);
  };
  const Rect& q = spec.q();
  auto rec = [&](auto&& self, const AffineMap2D& f) -> void {
    budget.tick();
    const Rect r = f.image(q);
    if (distance(r, region) > 0.0) return;
    if (diameter(r) <= target) {
      emit(center(r));
      return;
    }
    if (projection && r.height() <= target) {
      const double cy = 0.5 * (r.ymin + r.ymax);
      const double xlo = region.xmin - target;
      const double xhi = region.xmax + target;
      for (const auto& iv : projection->intervals()) {
        const auto img = f.image_x(iv);
        const double a = std::max(img.lo, xlo);
        const double b = std::min(img.hi, xhi);
        if (a > b) continue;
        const auto steps = static_cast<long>(std::ceil((b - a) / target));
        budget.tick(static_cast<std::uint64_t>(steps) + 1);
        for (long s = 0; s <= steps; ++s) {
          emit({steps == 0 ? a : a + (b - a) * static_cast<double>(s) / static_cast<double>(steps), cy});
        }
      }
      return;
    }
    for (const auto& g : spec.maps()) self(self, f * g);
  };
  rec(rec, AffineMap2D::identity());
  // Emission error is at most target/√2, deduplication adds √2·cell.
  out.resolution = target;
  return out;
}

}  // namespace carpet
