#include "carpet/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "carpet/error.hpp"

namespace carpet {

namespace {

struct Coeffs1D {
  std::vector<Rational> a;
  std::vector<Rational> b;
};

struct Hull1D {
  double lo;
  double hi;
  double error;
  std::optional<BasicInterval<Rational>> exact;
  std::size_t iterations;
};

template <class T>
BasicInterval<T> hull_image(const std::vector<T>& a, const std::vector<T>& b, const T& lo, const T& hi) {
  BasicInterval<T> out{a[0] * (a[0] > 0 ? lo : hi) + b[0], a[0] * (a[0] > 0 ? hi : lo) + b[0]};
  for (std::size_t i = 1; i < a.size(); ++i) {
    T ilo = a[i] * (a[i] > 0 ? lo : hi) + b[i];
    T ihi = a[i] * (a[i] > 0 ? hi : lo) + b[i];
    if (ilo < out.lo) out.lo = ilo;
    if (ihi > out.hi) out.hi = ihi;
  }
  return out;
}

// The hull fixed point is determined by which map realises each end; solve
// that 2x2 linear system exactly and check it is invariant.
std::optional<BasicInterval<Rational>> exact_hull(const Coeffs1D& c, double lo, double hi) {
  const std::size_t n = c.a.size();
  std::vector<double> ilo(n), ihi(n);
  double best_lo = std::numeric_limits<double>::infinity();
  double best_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = to_double(c.a[i]);
    const double b = to_double(c.b[i]);
    ilo[i] = a * (a > 0 ? lo : hi) + b;
    ihi[i] = a * (a > 0 ? hi : lo) + b;
    best_lo = std::min(best_lo, ilo[i]);
    best_hi = std::max(best_hi, ihi[i]);
  }
  const double slack = 1e-6 * (1.0 + std::abs(hi - lo) + std::abs(lo) + std::abs(hi));
  std::vector<std::size_t> lo_cands, hi_cands;
  for (std::size_t i = 0; i < n; ++i) {
    if (ilo[i] <= best_lo + slack) lo_cands.push_back(i);
    if (ihi[i] >= best_hi - slack) hi_cands.push_back(i);
  }
  const Rational one(1);
  for (std::size_t p : lo_cands) {
    for (std::size_t q : hi_cands) {
      const Rational& ap = c.a[p];
      const Rational& aq = c.a[q];
      const Rational m11 = ap > 0 ? one - ap : one;
      const Rational m12 = ap > 0 ? Rational(0) : Rational(-ap);
      const Rational m21 = aq > 0 ? Rational(0) : Rational(-aq);
      const Rational m22 = aq > 0 ? one - aq : one;
      const Rational det = m11 * m22 - m12 * m21;
      if (det == 0) continue;
      Rational xlo = (c.b[p] * m22 - m12 * c.b[q]) / det;
      Rational xhi = (m11 * c.b[q] - m21 * c.b[p]) / det;
      if (xlo > xhi) continue;
      const auto img = hull_image(c.a, c.b, xlo, xhi);
      if (img.lo == xlo && img.hi == xhi) return BasicInterval<Rational>{xlo, xhi};
    }
  }
  return std::nullopt;
}

Hull1D hull_1d(const Coeffs1D& c, double tol) {
  const std::size_t n = c.a.size();
  std::vector<double> a(n), b(n);
  double contraction = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = to_double(c.a[i]);
    b[i] = to_double(c.b[i]);
    contraction = std::max(contraction, std::abs(a[i]));
  }
  // Doubling search for a symmetric invariant start [-R, R].
  double radius = 1.0;
  for (;;) {
    bool invariant = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(a[i]) * radius + std::abs(b[i]) > radius) invariant = false;
    }
    if (invariant) break;
    radius *= 2.0;
    if (radius > 0x1p60) throw Error(Errc::NoInvariantStart, "no invariant start interval up to 2^60");
  }
  double lo = -radius;
  double hi = radius;
  std::size_t it = 0;
  constexpr std::size_t kMaxIterations = 100000;
  for (; it < kMaxIterations; ++it) {
    const auto next = hull_image(a, b, lo, hi);
    const double change = std::max(std::abs(next.lo - lo), std::abs(next.hi - hi));
    lo = next.lo;
    hi = next.hi;
    if (change < tol) break;
  }
  Hull1D out{lo, hi, tol * contraction / (1.0 - contraction), std::nullopt, it + 1};
  out.exact = exact_hull(c, lo, hi);
  if (out.exact) {
    out.lo = to_double(out.exact->lo);
    out.hi = to_double(out.exact->hi);
    out.error = 0.0;
  }
  return out;
}

void check_symbols(const CarpetSpec& spec, const Word& w) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] >= spec.size()) {
      throw Error(Errc::SymbolOutOfRange, "symbol " + std::to_string(w[k] + 1) + " at position " +
                                              std::to_string(k) + " exceeds N=" + std::to_string(spec.size()));
    }
  }
}

struct PairSearch {
  const CarpetSpec& spec;
  int depth;
  BudgetCounter budget;
  double best;

  Rect rect(const AffineMap2D& f) const { return f.image(spec.q()); }

  void lower(const AffineMap2D& f, const AffineMap2D& g, int level) {
    budget.tick();
    const double d = distance(rect(f), rect(g));
    if (d >= best) return;
    if (level == depth) {
      best = d;
      return;
    }
    descend(f, g, level, [this](const AffineMap2D& u, const AffineMap2D& v, int l) { lower(u, v, l); });
  }

  void upper(const AffineMap2D& f, const AffineMap2D& g, int level) {
    budget.tick();
    for (const auto& p : spec.fixed_points()) {
      for (const auto& r : spec.fixed_points()) best = std::min(best, distance(apply(f, p), apply(g, r)));
    }
    if (level == depth || distance(rect(f), rect(g)) >= best) return;
    descend(f, g, level, [this](const AffineMap2D& u, const AffineMap2D& v, int l) { upper(u, v, l); });
  }

  // Visits child pairs nearest-first so good bounds appear early.
  template <class Visit>
  void descend(const AffineMap2D& f, const AffineMap2D& g, int level, Visit&& visit) {
    struct Child {
      double d;
      AffineMap2D u;
      AffineMap2D v;
    };
    std::vector<Child> kids;
    kids.reserve(spec.size() * spec.size());
    for (const auto& mi : spec.maps()) {
      const AffineMap2D u = f * mi;
      const Rect ru = rect(u);
      for (const auto& mj : spec.maps()) {
        const AffineMap2D v = g * mj;
        kids.push_back({distance(ru, rect(v)), u, v});
      }
    }
    std::stable_sort(kids.begin(), kids.end(), [](const Child& a, const Child& b) { return a.d < b.d; });
    for (const auto& k : kids) {
      if (k.d >= best) break;
      visit(k.u, k.v, level + 1);
    }
  }
};

// Smallest gap between distinct first-level rectangles, rounded down unless
// the squared gap is a rational square.
double exact_first_gap(const CarpetSpec& spec) {
  const ExactRect& q = *spec.bounding().exact;
  std::optional<Rational> best;
  auto gap1 = [](const Rational& a, const Rational& b) { return a > 0 ? a : (b > 0 ? b : Rational(0)); };
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const ExactRect a = spec.exact_maps()[i].image(q);
    for (std::size_t j = i + 1; j < spec.size(); ++j) {
      const ExactRect b = spec.exact_maps()[j].image(q);
      const Rational dx = gap1(Rational(a.xmin - b.xmax), Rational(b.xmin - a.xmax));
      const Rational dy = gap1(Rational(a.ymin - b.ymax), Rational(b.ymin - a.ymax));
      const Rational d2 = dx * dx + dy * dy;
      if (!best || d2 < *best) best = d2;
    }
  }
  if (!best || *best == 0) return 0.0;
  const mpz_class& num = best->get_num();
  const mpz_class& den = best->get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    return to_double(Rational(sqrt(num), sqrt(den)));
  }
  return std::nextafter(std::sqrt(to_double(*best)), 0.0);
}

}  // namespace

double CarpetSpec::alpha1(std::size_t i) const { return std::abs(maps_.at(i).a1); }
double CarpetSpec::alpha2(std::size_t i) const { return std::abs(maps_.at(i).a2); }

BoundingRect compute_bounding_rect(const std::vector<ExactAffineMap>& maps, double tol) {
  Coeffs1D cx, cy;
  for (const auto& f : maps) {
    cx.a.push_back(f.a1);
    cx.b.push_back(f.b1);
    cy.a.push_back(f.a2);
    cy.b.push_back(f.b2);
  }
  const Hull1D hx = hull_1d(cx, tol);
  const Hull1D hy = hull_1d(cy, tol);
  BoundingRect out;
  out.rect = Rect{hx.lo, hx.hi, hy.lo, hy.hi};
  out.error = std::max(hx.error, hy.error);
  out.iterations = std::max(hx.iterations, hy.iterations);
  if (hx.exact && hy.exact) out.exact = ExactRect{hx.exact->lo, hx.exact->hi, hy.exact->lo, hy.exact->hi};
  return out;
}

CarpetSpec validate_carpet(std::vector<ExactAffineMap> maps, const ValidateOptions& options) {
  if (maps.size() < 2) {
    throw Error(Errc::EmptySystem, "an IFS needs at least two maps, got " + std::to_string(maps.size()));
  }
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& f = maps[i];
    const std::string label = "map " + std::to_string(i + 1);
    if (f.a1 == 0 || f.a2 == 0) throw Error(Errc::Degenerate, label + " has a zero scale");
    if (abs(f.a1) >= 1 || abs(f.a2) >= 1) throw Error(Errc::NonContractive, label + " is not contractive");
  }

  CarpetSpec spec;
  spec.budget_ = options.budget;
  spec.exact_maps_ = std::move(maps);
  spec.alpha_under_ = std::numeric_limits<double>::infinity();
  for (const auto& ef : spec.exact_maps_) {
    const AffineMap2D f = to_double(ef);
    spec.maps_.push_back(f);
    spec.fixed_points_.push_back(fixed_point(f));
    const double a1 = std::abs(f.a1);
    const double a2 = std::abs(f.a2);
    spec.alpha_bar_ = std::max(spec.alpha_bar_, a1);
    spec.alpha_under_ = std::min(spec.alpha_under_, a2);
    spec.alpha2_max_ = std::max(spec.alpha2_max_, a2);
    spec.beta_ = std::max(spec.beta_, a2 / a1);
  }
  spec.bounding_ = compute_bounding_rect(spec.exact_maps_, options.hull_tol);

  const DeltaBounds first = separation_delta(spec, 1);
  const int depth = default_certification_depth(spec, first.hi, options.max_certification_depth);
  spec.ssc_ = ssc_check(spec, depth);
  spec.delta_ = depth == 1 ? first : separation_delta(spec, depth);
  return spec;
}

CarpetSpec validate_carpet(const std::vector<AffineMap2D>& maps, const ValidateOptions& options) {
  std::vector<ExactAffineMap> exact;
  exact.reserve(maps.size());
  for (const auto& f : maps) exact.push_back(to_exact(f));
  return validate_carpet(std::move(exact), options);
}

AffineMap2D compose(const CarpetSpec& spec, const Word& w) {
  check_symbols(spec, w);
  AffineMap2D f = AffineMap2D::identity();
  for (std::size_t k = 0; k < w.size(); ++k) f = f * spec.map(w[k]);
  return f;
}

ExactAffineMap compose_exact(const CarpetSpec& spec, const Word& w) {
  check_symbols(spec, w);
  ExactAffineMap f = ExactAffineMap::identity();
  for (std::size_t k = 0; k < w.size(); ++k) f = f * spec.exact_maps()[w[k]];
  return f;
}

Rect cylinder_rect(const CarpetSpec& spec, const Word& w) { return compose(spec, w).image(spec.q()); }

DeltaBounds separation_delta(const CarpetSpec& spec, int depth) {
  if (depth < 1) throw Error(Errc::InvalidArgument, "separation depth must be at least 1");
  PairSearch lo{spec, depth, BudgetCounter(spec.budget()), std::numeric_limits<double>::infinity()};
  PairSearch hi{spec, depth, BudgetCounter(spec.budget()), std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < spec.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.size(); ++j) {
      lo.lower(spec.map(i), spec.map(j), 1);
      hi.upper(spec.map(i), spec.map(j), 1);
    }
  }
  // Guard against rounding in the rectangle arithmetic.
  const double guard = 1e-12 * std::max(spec.diam_q(), 1e-300);
  DeltaBounds out;
  out.depth = depth;
  out.lo = std::max(0.0, lo.best - guard);
  out.hi = hi.best;
  if (depth == 1 && spec.bounding().exact) {
    // An exact lower bound wins over the rounded point distances above it.
    out.lo = exact_first_gap(spec);
    out.hi = std::max(out.hi, out.lo);
  }
  if (out.lo > out.hi) out.lo = out.hi;
  return out;
}

SscStatus ssc_check(const CarpetSpec& spec, int max_depth) {
  SscStatus status;
  for (int m = 1; m <= max_depth; ++m) {
    const DeltaBounds d = separation_delta(spec, m);
    status.depth = m;
    if (d.lo > 0.0) {
      status.certified = true;
      status.delta_lo = d.lo;
      return status;
    }
    // Two attractor points coincide: the images are not disjoint.
    if (d.hi == 0.0) break;
  }
  return status;
}

int default_certification_depth(const CarpetSpec& spec, double delta_hi, int max_depth) {
  const double c = spec.contraction();
  double size = spec.diam_q();
  int m = 1;
  size *= c;
  while (m < max_depth && !(size < delta_hi / 4.0)) {
    size *= c;
    ++m;
  }
  return m;
}

CarpetSpec normalized_to_unit_square(const CarpetSpec& spec) {
  ExactRect q = spec.bounding().exact ? *spec.bounding().exact : to_exact(spec.q());
  Rational side = q.width() > q.height() ? q.width() : q.height();
  if (side == 0) throw Error(Errc::Degenerate, "attractor is a single point");
  std::vector<ExactAffineMap> maps;
  for (const auto& f : spec.exact_maps()) {
    ExactAffineMap g = f;
    g.b1 = (f.a1 * q.xmin + f.b1 - q.xmin) / side;
    g.b2 = (f.a2 * q.ymin + f.b2 - q.ymin) / side;
    maps.push_back(g);
  }
  ValidateOptions opts;
  opts.budget = spec.budget();
  return validate_carpet(std::move(maps), opts);
}

}  // namespace carpet
