#include "carpet/scales.hpp"

#include <cmath>
#include <string>

#include "carpet/error.hpp"
#include "carpet/rng.hpp"

namespace carpet {

namespace {

void check_scale(double t) {
  if (!(t > 0.0 && t < 1.0)) throw Error(Errc::ScaleOutOfRange, "scale must lie in (0,1), got " + std::to_string(t));
}

enum class Decision { Avoid, Meet, Ambiguous };

struct SiblingDecider {
  const CarpetSpec& spec;
  Point2 p;
  double t;
  BudgetCounter budget;

  Decision decide(const AffineMap2D& g, int levels) {
    budget.tick();
    if (distance(p, g.image(spec.q())) > t) return Decision::Avoid;
    for (const auto& fp : spec.fixed_points()) {
      if (distance(p, apply(g, fp)) <= t) return Decision::Meet;
    }
    if (levels == 0) return Decision::Ambiguous;
    Decision out = Decision::Avoid;
    for (const auto& f : spec.maps()) {
      const Decision d = decide(g * f, levels - 1);
      if (d == Decision::Meet) return d;
      if (d == Decision::Ambiguous) out = d;
    }
    return out;
  }
};

}  // namespace

int n_star(double alpha_bar, double t) {
  check_scale(t);
  int n = 1;
  double a = alpha_bar;
  while (!(a < t)) {
    a *= alpha_bar;
    ++n;
  }
  return n;
}

int n_star(const CarpetSpec& spec, double t) { return n_star(spec.alpha_bar(), t); }

int n_lower_star(double alpha_under, double delta, double t) {
  check_scale(t);
  if (!(alpha_under * delta > t)) {
    throw Error(Errc::EmptyIndexSet, "no n satisfies α̲ⁿδ > t at t=" + std::to_string(t));
  }
  int n = 1;
  double a = alpha_under * alpha_under;
  while (a * delta > t) {
    a *= alpha_under;
    ++n;
  }
  return n;
}

int n_lower_star(const CarpetSpec& spec, double t) { return n_lower_star(spec.alpha_under(), spec.delta().lo, t); }

Point2 coding_point(const CarpetSpec& spec, const InfiniteWord& w) {
  if (w.cycle.empty()) throw Error(Errc::InvalidArgument, "infinite word needs a nonempty cycle");
  const Point2 fix = fixed_point(compose(spec, w.cycle));
  return apply(compose(spec, w.prefix), fix);
}

ScaleIndex n_of(const CarpetSpec& spec, const InfiniteWord& w, double t, int cert_depth) {
  check_scale(t);
  SiblingDecider decider{spec, coding_point(spec, w), t, BudgetCounter(spec.budget())};
  // A meet must occur by level n*(t) when the ball swallows a cylinder; the
  // margin absorbs the diam(Q) factor of unnormalised inputs.
  const int max_level = n_star(spec, t) + 16;
  int first_undecided = -1;
  AffineMap2D f = AffineMap2D::identity();
  for (int d = 0; d <= max_level; ++d) {
    const Symbol own = w.at(static_cast<std::size_t>(d));
    Decision level = Decision::Avoid;
    for (std::size_t k = 0; k < spec.size(); ++k) {
      if (k == own) continue;
      const Decision dk = decider.decide(f * spec.map(k), cert_depth);
      if (dk == Decision::Meet) {
        level = dk;
        break;
      }
      if (dk == Decision::Ambiguous) level = dk;
    }
    if (level == Decision::Meet) {
      ScaleIndex out;
      out.hi = d;
      out.lo = first_undecided >= 0 ? first_undecided : d;
      out.out_of_regime = d == 0;
      return out;
    }
    if (level == Decision::Ambiguous && first_undecided < 0) first_undecided = d;
    f = f * spec.map(own);
  }
  throw Error(Errc::Undecidable, "no sibling cylinder certified to meet the ball; raise cert_depth");
}

std::vector<ScaleReport> verify_littlethings(const CarpetSpec& spec, const std::vector<ScaleSample>& samples,
                                             const LittleOptions& opts) {
  const double dlo = opts.delta_lo.value_or(spec.delta().lo);
  const double dhi = opts.delta_hi.value_or(spec.delta().hi);
  std::vector<ScaleReport> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    ScaleReport r;
    r.t = s.t;
    r.word = s.word.to_string();
    r.n_upper = n_star(spec, s.t);
    try {
      r.n_lower = n_lower_star(spec.alpha_under(), dlo, s.t);
    } catch (const Error& e) {
      if (e.code() != Errc::EmptyIndexSet) throw;
      r.n_lower = 0;
    }
    r.n_exact = n_of(spec, s.word, s.t, opts.cert_depth);
    r.word_prefix = s.word.truncate(static_cast<std::size_t>(r.n_exact.hi));
    r.lo_bound = spec.alpha_under() * s.t;
    r.hi_bound = s.t / dlo;
    r.hi_bound_ideal = s.t / dhi;
    r.certified = r.n_exact.certified();
    if (r.certified) {
      r.ratio = 1.0;
      for (std::size_t k = 0; k < r.word_prefix.size(); ++k) r.ratio *= spec.alpha2(r.word_prefix[k]);
      r.sandwich_ok = r.n_lower <= r.n_exact.lo && r.n_exact.hi <= r.n_upper;
      r.ratio_ok = r.lo_bound <= r.ratio && r.ratio <= r.hi_bound;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ScaleSample> scale_samples(const CarpetSpec& spec, std::size_t count, double t_lo, double t_hi,
                                       std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ScaleSample> out;
  auto random_word = [&]() {
    InfiniteWord w;
    const auto plen = rng.below(7);
    const auto clen = 1 + rng.below(3);
    for (std::uint64_t k = 0; k < plen; ++k) w.prefix.push_back(static_cast<Symbol>(rng.below(spec.size())));
    for (std::uint64_t k = 0; k < clen; ++k) w.cycle.push_back(static_cast<Symbol>(rng.below(spec.size())));
    return w;
  };
  const double edge = spec.alpha_under() * spec.delta().lo;
  std::vector<double> edges;
  if (edge > t_lo && edge < t_hi) edges = {edge * (1.0 - 1e-9), edge * (1.0 + 1e-9)};
  const std::size_t random_count = count > edges.size() ? count - edges.size() : 0;
  const double llo = std::log(t_lo);
  const double lhi = std::log(t_hi);
  for (std::size_t k = 0; k < random_count; ++k) {
    InfiniteWord w = random_word();
    out.push_back({std::move(w), std::exp(rng.uniform(llo, lhi))});
  }
  for (double t : edges) out.push_back({random_word(), t});
  return out;
}

}  // namespace carpet
