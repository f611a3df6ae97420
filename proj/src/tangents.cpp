#include "carpet/tangents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "carpet/error.hpp"
#include "carpet/sampling.hpp"
#include "carpet/scales.hpp"

namespace carpet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Evenly spaced points covering [a, b] with gaps at most h, both ends included.
template <class F>
void along(double a, double b, double h, F&& f) {
  if (a > b) return;
  const auto steps = static_cast<long>(std::ceil((b - a) / h));
  if (steps <= 0) {
    f(a);
    return;
  }
  for (long k = 0; k <= steps; ++k) f(k == steps ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(steps));
}

void collect_endings(const ExactAffineMap& f, int levels, const CarpetSpec& spec, const ExactRect& q,
                     BudgetCounter& budget, std::vector<Rational>& out) {
  budget.tick();
  if (levels == 0) {
    out.push_back(f.apply_x(q.xmin));
    out.push_back(f.apply_x(q.xmax));
    return;
  }
  for (const auto& g : spec.exact_maps()) collect_endings(f * g, levels - 1, spec, q, budget, out);
}

std::vector<double> distinct_sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(to_double(r));
  return out;
}

}  // namespace

EndingAnalysis analyze_endings(const CarpetSpec& spec, int K) {
  if (K < 0) throw Error(Errc::InvalidArgument, "K must be nonnegative");
  if (std::pow(static_cast<double>(spec.size()), K) > static_cast<double>(spec.budget())) {
    throw Error(Errc::DepthBudgetExceeded, "N^K exceeds the word budget");
  }
  const ExactRect q = spec.bounding().exact ? *spec.bounding().exact : to_exact(spec.q());
  std::vector<Rational> raw;
  BudgetCounter budget(spec.budget() * 2);
  collect_endings(ExactAffineMap::identity(), K, spec, q, budget, raw);
  EndingAnalysis out;
  out.K = K;
  out.ending_abscissae = distinct_sorted(std::move(raw));
  out.degenerate = out.ending_abscissae.size() < 2;
  if (out.degenerate) return out;
  out.delta_K = kInf;
  for (std::size_t k = 1; k < out.ending_abscissae.size(); ++k) {
    out.delta_K = std::min(out.delta_K, out.ending_abscissae[k] - out.ending_abscissae[k - 1]);
  }
  if (!(spec.beta() < 1.0)) throw Error(Errc::InvalidArgument, "ending threshold needs β < 1 (H1)");
  int n = 1;
  while (out.delta_K * spec.alpha_under() * std::pow(spec.beta(), -n) < 3.0) ++n;
  out.n_K = n;
  out.t_K = std::pow(spec.alpha_under(), n) * spec.delta().lo;
  return out;
}

TangentCloud rescale_window_at(const CarpetSpec& spec, const Window& window, double resolution) {
  if (!(window.t > 0 && window.radius > 0)) throw Error(Errc::InvalidArgument, "window needs t > 0 and R > 0");
  if (resolution > window.radius / 100.0) {
    throw Error(Errc::ResolutionTooCoarse, "cloud resolution must be at most R/100");
  }
  const double reach = window.radius * window.t;
  const Rect region{window.center.x - reach, window.center.x + reach, window.center.y - reach,
                    window.center.y + reach};
  const auto sample = sample_attractor(spec, region, resolution * window.t, certified_projection(spec));
  TangentCloud cloud;
  cloud.window = window;
  cloud.resolution = sample.resolution / window.t;
  for (const auto& p : sample.points) {
    const Point2 r{(p.x - window.center.x) / window.t, (p.y - window.center.y) / window.t};
    if (std::hypot(r.x, r.y) <= window.radius) cloud.points.push_back(r);
  }
  std::sort(cloud.points.begin(), cloud.points.end(),
            [](const Point2& a, const Point2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  return cloud;
}

TangentCloud rescale_window(const CarpetSpec& spec, const Window& window, int depth) {
  return rescale_window_at(spec, window, spec.diam_q() * std::pow(spec.alpha_bar(), depth) / window.t);
}

std::vector<Point2> discretize_product_form(double w, const IntervalUnion1D& left, const IntervalUnion1D& right,
                                            const Point2& c, double radius, double h) {
  std::vector<Point2> out;
  auto strips = [&](const IntervalUnion1D& set, bool is_left) {
    for (const auto& iv : set.intervals()) {
      along(std::max(iv.lo, c.y - radius), std::min(iv.hi, c.y + radius), h, [&](double y) {
        const double dy = y - c.y;
        const double s = std::sqrt(std::max(0.0, radius * radius - dy * dy));
        const double a = is_left ? c.x - s : std::max(w, c.x - s);
        const double b = is_left ? std::min(w, c.x + s) : c.x + s;
        along(a, b, h, [&](double x) { out.push_back({x, y}); });
      });
    }
  };
  strips(left, true);
  strips(right, false);
  return out;
}

ProductForm fit_product_form(const TangentCloud& cloud, const FitOptions&) {
  if (cloud.points.empty()) throw Error(Errc::EmptyCloud, "cannot fit an empty cloud");
  const double R = cloud.window.radius;
  const double res = cloud.resolution > 0 ? cloud.resolution : R / 256.0;
  const double h = res;
  const double margin = 2.0 * res;
  const auto n = static_cast<long>(std::ceil(2.0 * R / h));
  auto coord = [&](long i) { return -R + static_cast<double>(i) * h; };
  const NearestIndex index(cloud.points);

  // D[j][i]: distance from the grid point (x_i, y_j) to the cloud, -inf outside B(0,R).
  const std::size_t stride = static_cast<std::size_t>(n) + 1;
  std::vector<double> prefix(stride * stride), suffix(stride * stride);
  for (long j = 0; j <= n; ++j) {
    double run = -kInf;
    for (long i = 0; i <= n; ++i) {
      const Point2 g{coord(i), coord(j)};
      const double d = std::hypot(g.x, g.y) <= R ? index.nearest_distance(g) : -kInf;
      suffix[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i)] = d;
      run = std::max(run, d);
      prefix[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i)] = run;
    }
    double back = -kInf;
    for (long i = n; i >= 0; --i) {
      auto& cell = suffix[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i)];
      back = std::max(back, cell);
      cell = back;
    }
  }

  // Rows of C(w): grid rows within res of some cloud ordinate on that side.
  auto rows_of = [&](const Point2& p, auto&& f) {
    const long lo = std::max(0L, static_cast<long>(std::ceil((p.y - res + R) / h)));
    const long hi = std::min(n, static_cast<long>(std::floor((p.y + res + R) / h)));
    for (long j = lo; j <= hi; ++j) f(static_cast<std::size_t>(j));
  };

  std::vector<double> xs;
  for (const auto& p : cloud.points) xs.push_back(std::round(p.x / res) * res);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> candidates{-R};
  for (double x : xs) {
    if (x > -R && x < R) candidates.push_back(x);
  }
  candidates.push_back(R);

  std::vector<Point2> pts = cloud.points;
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<int> left_count(stride, 0), right_count(stride, 0);
  for (const auto& p : pts) rows_of(p, [&](std::size_t j) { ++right_count[j]; });
  std::size_t left_end = 0;   // pts[0, left_end) have x <= w - margin
  std::size_t right_begin = 0;  // pts[right_begin, end) have x >= w + margin

  auto segment_distance = [&](const Point2& p, double y, double a, double b) {
    if (a > b) return kInf;
    const double dx = p.x < a ? a - p.x : (p.x > b ? p.x - b : 0.0);
    return std::hypot(dx, p.y - y);
  };

  double best_res = kInf;
  double best_w = 0.0;
  for (double w : candidates) {
    while (left_end < pts.size() && pts[left_end].x <= w - margin) {
      rows_of(pts[left_end], [&](std::size_t j) { ++left_count[j]; });
      ++left_end;
    }
    while (right_begin < pts.size() && pts[right_begin].x < w + margin) {
      rows_of(pts[right_begin], [&](std::size_t j) { --right_count[j]; });
      ++right_begin;
    }
    const long iw_left = std::clamp(static_cast<long>(std::floor((w + R) / h)), -1L, n);
    const long iw_right = std::clamp(static_cast<long>(std::ceil((w + R) / h)), 0L, n + 1);
    double model_to_cloud = -kInf;
    for (std::size_t j = 0; j < stride; ++j) {
      if (left_count[j] > 0 && iw_left >= 0) {
        model_to_cloud = std::max(model_to_cloud, prefix[j * stride + static_cast<std::size_t>(iw_left)]);
      }
      if (right_count[j] > 0 && iw_right <= n) {
        model_to_cloud = std::max(model_to_cloud, suffix[j * stride + static_cast<std::size_t>(iw_right)]);
      }
    }
    if (model_to_cloud == -kInf) continue;  // model misses the ball
    // Cloud points away from w lie on their own model rows; only the band
    // around w needs an explicit distance.
    double cloud_to_model = 0.0;
    for (std::size_t k = left_end; k < right_begin; ++k) {
      const Point2& p = pts[k];
      double d = kInf;
      for (std::size_t j = 0; j < stride; ++j) {
        if (left_count[j] == 0 && right_count[j] == 0) continue;
        const double y = coord(static_cast<long>(j));
        const double s = std::sqrt(std::max(0.0, R * R - y * y));
        if (left_count[j] > 0) d = std::min(d, segment_distance(p, y, -s, std::min(w, s)));
        if (right_count[j] > 0) d = std::min(d, segment_distance(p, y, std::max(w, -s), s));
      }
      cloud_to_model = std::max(cloud_to_model, d);
    }
    const double residual = std::max(model_to_cloud, cloud_to_model);
    if (residual < best_res || (residual == best_res && std::abs(w) < std::abs(best_w))) {
      best_res = residual;
      best_w = w;
    }
  }
  if (best_res == kInf) throw Error(Errc::EmptyCloud, "no candidate split produced a model inside the ball");

  ProductForm out;
  out.w = best_w;
  out.residual = best_res;
  out.slack = 2.0 * res;
  std::vector<Interval1D> l, r;
  for (const auto& p : pts) {
    if (p.x <= best_w - margin) l.push_back({p.y - res, p.y + res});
    if (p.x >= best_w + margin) r.push_back({p.y - res, p.y + res});
  }
  out.c_left = IntervalUnion1D(std::move(l));
  out.c_right = IntervalUnion1D(std::move(r));
  return out;
}

EpsPatternReport verify_epspatterns(const CarpetSpec& spec, const InfiniteWord& word, double t, int K,
                                    const EpsPatternOptions& opts) {
  const auto endings = analyze_endings(spec, K);
  if (!endings.degenerate && !(t < endings.t_K)) {
    throw Error(Errc::ScaleOutOfRange, "t must lie below t_K = " + std::to_string(endings.t_K));
  }
  EpsPatternReport rep;
  rep.center = coding_point(spec, word);
  rep.t = t;
  rep.K = K;
  const ScaleIndex n = n_of(spec, word, t, opts.cert_depth);
  if (!n.certified()) throw Error(Errc::Undecidable, "n(i,t) is not certified; raise cert_depth");
  rep.n = n.hi;
  const Point2 x = rep.center;

  // Ending lines of the level-(n+K) rectangles inside Q_{i|n} that meet the ball.
  const ExactRect q = spec.bounding().exact ? *spec.bounding().exact : to_exact(spec.q());
  std::vector<Rational> raw;
  BudgetCounter budget(spec.budget());
  collect_endings(compose_exact(spec, word.truncate(static_cast<std::size_t>(rep.n))), K, spec, q, budget, raw);
  std::vector<double> lines;
  for (double e : distinct_sorted(std::move(raw))) {
    if (std::abs(e - x.x) <= t) lines.push_back(e);
  }
  rep.ending_lines = lines.size();
  rep.multiple_endings = lines.size() > 1;
  rep.w = x.x;
  for (double e : lines) {
    if (std::abs(e - x.x) < std::abs(rep.w - x.x) || rep.w == x.x) rep.w = e;
  }
  if (lines.empty()) rep.w = x.x;

  const double h = t * opts.sample_fraction;
  const Rect region{x.x - t, x.x + t, x.y - t, x.y + t};
  const auto sample = sample_attractor(spec, region, h, certified_projection(spec));
  const auto e_pts = clip_to_ball(sample.points, x, t);
  if (e_pts.empty()) throw Error(Errc::EmptyIntersection, "no sample of E in the ball");
  const NearestIndex e_index(e_pts);

  const int depth = rep.n + K;
  const Interval1D ywin{x.y - t, x.y + t};
  std::vector<double> us, vs;
  if (lines.empty()) {
    us = {x.x};
    vs = {x.x};
  } else {
    for (std::size_t k = 0; k < opts.uv_candidates; ++k) {
      const double off = t * std::pow(2.0, -0.5 * static_cast<double>(k + 1));
      us.push_back(rep.w - off);
      vs.push_back(rep.w + off);
    }
  }

  struct Side {
    IntervalUnion1D slice;
    double pos;             // first u (or v) giving this slice
    double model_to_e;      // sup over this side's model points of dist to E
    std::vector<double> e_to_model;  // per E point
  };
  auto build = [&](const std::vector<double>& at, bool is_left) {
    std::vector<Side> sides;
    for (double pos : at) {
      auto slice = vertical_slice_cover(spec, pos, depth, ywin).set;
      if (std::any_of(sides.begin(), sides.end(), [&](const Side& s) { return s.slice == slice; })) continue;
      Side s;
      s.pos = pos;
      s.slice = slice;
      const IntervalUnion1D none;
      const auto model = is_left ? discretize_product_form(rep.w, slice, none, x, t, h)
                                 : discretize_product_form(rep.w, none, slice, x, t, h);
      s.model_to_e = -kInf;
      for (const auto& m : model) s.model_to_e = std::max(s.model_to_e, e_index.nearest_distance(m));
      s.e_to_model.assign(e_pts.size(), kInf);
      if (!model.empty()) {
        const NearestIndex m_index(model);
        for (std::size_t k = 0; k < e_pts.size(); ++k) s.e_to_model[k] = m_index.nearest_distance(e_pts[k]);
      }
      sides.push_back(std::move(s));
    }
    return sides;
  };
  const auto left = build(us, true);
  const auto right = build(vs, false);

  rep.residual = kInf;
  for (const auto& l : left) {
    for (const auto& r : right) {
      double res = std::max(l.model_to_e, r.model_to_e);
      if (res == -kInf) continue;
      for (std::size_t k = 0; k < e_pts.size(); ++k) res = std::max(res, std::min(l.e_to_model[k], r.e_to_model[k]));
      if (res < rep.residual) {
        rep.residual = res;
        rep.u = l.pos;
        rep.v = r.pos;
        rep.c_left = l.slice;
        rep.c_right = r.slice;
      }
    }
  }
  if (rep.residual == kInf) throw Error(Errc::EmptyIntersection, "the model misses the ball");
  rep.bound = t / spec.delta().lo * std::pow(spec.alpha_bar(), K);
  // E sample error plus model grid error.
  rep.slack = sample.resolution + 2.0 * h;
  rep.pass = rep.residual <= rep.bound + rep.slack;
  return rep;
}

std::vector<Point2> miniset(const std::vector<Point2>& pts, double lambda, const Point2& z) {
  if (lambda < 1.0) throw Error(Errc::ScalingBelowOne, "miniset scaling must be at least 1");
  std::vector<Point2> out;
  for (const auto& p : pts) {
    const Point2 q{lambda * p.x + z.x, lambda * p.y + z.y};
    if (q.x >= 0.0 && q.x <= 1.0 && q.y >= 0.0 && q.y <= 1.0) out.push_back(q);
  }
  return out;
}

}  // namespace carpet
