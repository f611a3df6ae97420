// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <unistd.h>

#include "carpet/cli/commands.hpp"
#include "carpet/cli/presets.hpp"
#include "carpet/conditions.hpp"
#include "carpet/error.hpp"
#include "carpet/geometry.hpp"
#include "carpet/io.hpp"
#include "carpet/rng.hpp"

using namespace carpet;
namespace fs = std::filesystem;

namespace {

struct Tally {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Tally()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Tally v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("threw ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= limit_s) v.require(false, fmt::format("runtime {:.2f}s over {}s", secs, limit_s));
  if (!v.pass) ++failures;
  std::printf("[%d] %s: %s (%.2fs)%s%s\n", id, title.c_str(), v.pass ? "PASS" : "FAIL", secs,
              v.detail.empty() ? "" : ": ", v.detail.c_str());
  std::fflush(stdout);
}

CarpetSpec spec_of(const cli::Preset& p) { return validate_carpet(read_maps_file(cli::fixture_path(p.fixture))); }

bool nonempty_disjoint(const IntervalUnion1D& a, const IntervalUnion1D& b) {
  if (a.empty() || b.empty()) return false;
  for (const auto& x : a.intervals())
    for (const auto& y : b.intervals())
      if (x.lo <= y.hi && y.lo <= x.hi) return false;
  return true;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Relative path -> bytes for every regular file under root.
std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out.emplace_back(fs::relative(e.path(), root).string(), slurp(e.path()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Brute-force directed Hausdorff distance, independent of the library index.
double brute_directed(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  double sup = 0.0;
  for (const auto& p : a) {
    double inf = INFINITY;
    for (const auto& q : b) inf = std::min(inf, std::hypot(p.x - q.x, p.y - q.y));
    sup = std::max(sup, inf);
  }
  return sup;
}

std::set<std::pair<double, double>> as_set(const std::vector<Point2>& pts) {
  std::set<std::pair<double, double>> out;
  for (const auto& p : pts) out.insert({p.x, p.y});
  return out;
}

}  // namespace

int main() {
  const auto p_two_gap = cli::load_preset("two_gap");
  const auto p_centre = cli::load_preset("centre_line");

  criterion(1, "conditions on two_gap", 1.0, [&] {
    Tally v;
    const auto s = spec_of(p_two_gap);
    const auto h2 = check_H2(s);
    v.require(h2.verdict == carpet::Verdict::Fails, "H2 does not fail");
    bool inside = !h2.witnesses.empty();
    for (const auto& w : h2.witnesses) inside = inside && w.lo >= Rational(3, 5) && w.hi <= Rational(4, 5);
    v.require(inside, "H2 witness outside [3/5,4/5]");
    v.require(check_H2doubleprime(s).verdict == carpet::Verdict::Holds, "H2'' does not hold");
    const ExactIntervalUnion want({{Rational(0), Rational(3, 5)}, {Rational(4, 5), Rational(1)}});
    for (int depth = 1; depth <= 6; ++depth) {
      const auto proj = horizontal_projection(s, depth);
      v.require(proj.exact_outer && *proj.exact_outer == want, fmt::format("projection differs at depth {}", depth));
    }
    if (v.pass) {
      const auto& w = h2.witnesses.front();
      v.detail = fmt::format("H2 witness [{}, {}], projection [0,3/5] u [4/5,1] at depths 1..6", w.lo.get_str(),
                             w.hi.get_str());
    }
    return v;
  });

  criterion(2, "conditions on centre_line", 1.0, [&] {
    Tally v;
    const auto s = spec_of(p_centre);
    v.require(check_H1(s).verdict == carpet::Verdict::Holds, "H1 does not hold");
    v.require(check_H2(s).verdict == carpet::Verdict::Holds, "H2 does not hold");
    v.require(check_H2prime(s, p_centre.check.h2prime_depth).verdict == carpet::Verdict::Holds, "H2' does not hold");
    v.require(s.ssc().certified && s.ssc().depth == 1, "SSC not certified at depth 1");
    // Oracle: smallest gap between distinct first-level rectangles, from exact corners.
    const ExactRect q = *s.bounding().exact;
    double gap = INFINITY;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const ExactRect a = s.exact_maps()[i].image(q), b = s.exact_maps()[j].image(q);
        Rational dx = std::max<Rational>({Rational(a.xmin - b.xmax), Rational(b.xmin - a.xmax), Rational(0)});
        Rational dy = std::max<Rational>({Rational(a.ymin - b.ymax), Rational(b.ymin - a.ymax), Rational(0)});
        gap = std::min(gap, std::sqrt(to_double(Rational(dx * dx + dy * dy))));
      }
    }
    v.require(std::abs(gap - 0.05) <= 1e-15, fmt::format("oracle gap {}", gap));
    v.require(std::abs(s.ssc().delta_lo - gap) <= 1e-12, fmt::format("delta_lo {} vs oracle {}", s.ssc().delta_lo, gap));
    if (v.pass) v.detail = fmt::format("delta_lo {} at depth 1", s.ssc().delta_lo);
    return v;
  });

  criterion(3, "scale sandwich and ratio bounds on centre_line", 30.0, [&] {
    Tally v;
    const auto s = spec_of(p_centre);
    const auto& sp = p_centre.scales;
    v.require(sp.cert_depth == 6, "cert_depth is not 6");
    const auto rows = cli::run_scales(s, sp);
    v.require(rows.size() >= 100, "fewer than 100 samples");
    const double t_lo = std::pow(s.alpha_bar(), 8), t_hi = std::pow(s.alpha_bar(), 3);
    std::size_t certified = 0, bad = 0;
    for (const auto& r : rows) {
      v.require(r.t >= t_lo && r.t <= t_hi, fmt::format("t={} outside the range", r.t));
      if (!r.certified) continue;
      ++certified;
      if (!r.sandwich_ok || !r.ratio_ok) ++bad;
    }
    v.require(bad == 0, fmt::format("{} certified samples fail", bad));
    const double frac = rows.empty() ? 0.0 : static_cast<double>(certified) / static_cast<double>(rows.size());
    v.require(frac >= 0.95, fmt::format("certified fraction {:.3f}", frac));
    if (v.pass) v.detail = fmt::format("{} samples, {} certified", rows.size(), certified);
    return v;
  });

  criterion(4, "slice porosity and perfectness on centre_line", 60.0, [&] {
    Tally v;
    const auto s = spec_of(p_centre);
    const auto& sp = p_centre.slice;
    v.require(sp.count == 20 && sp.depth == 8, "slice preset is not 20 slices at depth 8");
    v.require(sp.r_min_power == 6 && sp.r_max_power == 2, "scale window is not [a^6, a^2]");
    const auto rows = cli::run_slices(s, sp);
    v.require(rows.size() == 20, fmt::format("{} slices", rows.size()));
    std::size_t bad = 0;
    double worst_por = INFINITY, worst_perf = 0.0;
    for (const auto& r : rows) {
      // Recompute the bounds from the constants rather than trusting the report.
      const double slack = 2.0 * r.resolution / r.scale_range.r_min;
      const double por_bound = std::min(s.delta().lo, 1.0) / 4.0;
      int k = 0;
      for (double a = 1.0; !(a < s.delta().lo); a *= s.alpha_bar()) ++k;
      const double perf_bound = 1.0 / (s.delta().lo * std::pow(s.alpha_under(), k + 1));
      if (!(r.porosity_const >= por_bound - slack && r.perfectness_const <= perf_bound + slack)) ++bad;
      worst_por = std::min(worst_por, r.porosity_const);
      worst_perf = std::max(worst_perf, r.perfectness_const);
    }
    v.require(bad == 0, fmt::format("{} slices fail", bad));
    if (v.pass) v.detail = fmt::format("min porosity {:.4f}, max perfectness {:.3f}", worst_por, worst_perf);
    return v;
  });

  criterion(5, "two-slice residuals on centre_line", 120.0, [&] {
    Tally v;
    const auto s = spec_of(p_centre);
    const auto& tp = p_centre.tangent;
    v.require(tp.K == std::vector<int>{2, 3, 4}, "K is not {2,3,4}");
    const auto run = cli::run_tangent_windows(s, tp);
    v.require(run.windows == 10, fmt::format("{} windows", run.windows));
    v.require(run.reports.size() == run.windows * tp.K.size(), "report count mismatch");
    std::size_t over = 0, flat = 0;
    for (std::size_t w = 0; w < run.windows; ++w) {
      const auto* r2 = &run.reports[w * 3];
      const auto* r4 = &run.reports[w * 3 + 2];
      for (std::size_t k = 0; k < 3; ++k) {
        const auto& r = run.reports[w * 3 + k];
        const double bound = r.t / s.delta().lo * std::pow(s.alpha_bar(), r.K);
        if (!(r.residual <= bound + r.slack)) ++over;
      }
      if (!(r2->K == 2 && r4->K == 4 && r4->residual < r2->residual)) ++flat;
    }
    v.require(over == 0, fmt::format("{} runs over the bound", over));
    v.require(flat == 0, fmt::format("{} windows without a strict decrease", flat));
    if (v.pass) v.detail = fmt::format("{} windows, {} redrawn", run.windows, run.skipped);
    return v;
  });

  criterion(6, "product-form trend along the centre line", 120.0, [&] {
    Tally v;
    const auto s = spec_of(p_centre);
    v.require(p_centre.trend.has_value(), "no trend schedule");
    if (!p_centre.trend) return v;
    const auto& ws = p_centre.trend->windows;
    v.require(ws.size() == 4, "schedule is not four scales");
    for (std::size_t i = 0; i < ws.size(); ++i) {
      v.require(ws[i].t == std::pow(s.alpha_bar(), 3 + static_cast<int>(i)), fmt::format("t_{} is off schedule", i));
    }
    const auto run = cli::run_trend(s, *p_centre.trend);
    std::string trail;
    for (std::size_t i = 0; i < run.rows.size(); ++i) {
      const auto& f = run.rows[i].form;
      trail += fmt::format("{}{:.4f}", i ? " " : "", f.residual);
      if (i > 0) v.require(f.residual <= run.rows[i - 1].form.residual + f.slack, fmt::format("rise at step {}", i));
    }
    v.require(!run.rows.empty() && nonempty_disjoint(run.rows.back().form.c_left, run.rows.back().form.c_right),
              "finest C_left, C_right not disjoint and nonempty");
    if (v.pass) v.detail = "residuals " + trail;
    return v;
  });

  criterion(7, "dimension orderings on segment, square, centre_line", 120.0, [&] {
    Tally v;
    std::string trail;
    for (const char* name : {"segment", "square", "centre_line"}) {
      const auto p = cli::load_preset(name);
      auto dp = p.dim;
      dp.microset = false;
      v.require(dp.level_lo == 3 && dp.level_hi == 9, std::string(name) + " levels are not 3..9");
      const auto run = cli::run_dim(spec_of(p), dp);
      const auto& m = run.minkowski;
      v.require(m.lower_slope <= m.upper_slope, std::string(name) + " lower > upper");
      v.require(m.upper_slope <= run.assouad.value + 0.05, std::string(name) + " upper > Assouad + 0.05");
      if (std::string(name) == "segment") v.require(std::abs(m.value - 1.0) <= 0.1, "segment off 1");
      if (std::string(name) == "square") v.require(std::abs(m.value - 2.0) <= 0.05, "square off 2");
      trail += fmt::format("{}{} {:.3f}<={:.3f}<={:.3f}", trail.empty() ? "" : ", ", name, m.lower_slope,
                           m.upper_slope, run.assouad.value);
    }
    if (v.pass) v.detail = trail;
    return v;
  });

  criterion(8, "best microset slope against Assouad", 300.0, [&] {
    Tally v;
    std::string trail;
    for (const char* name : {"centre_line", "cantor_product"}) {
      const auto p = cli::load_preset(name);
      v.require(p.dim.n_lo == 3 && p.dim.n_hi == 7 && p.dim.window_budget == 6,
                std::string(name) + " search is not n=3..7, budget 6");
      const auto run = cli::run_dim(spec_of(p), p.dim);
      v.require(run.microset && run.gap, std::string(name) + " has no microset result");
      if (!run.gap) continue;
      std::vector<std::pair<int, double>> pts;
      for (const auto& c : run.microset->best_counts) pts.emplace_back(c.level, static_cast<double>(c.count));
      const double slope = log2_slope(pts);
      v.require(std::abs(slope - run.gap->microset_slope) <= 1e-12, std::string(name) + " slope mismatch");
      v.require(slope >= run.assouad.value - 0.1, fmt::format("{} slope {:.4f} < {:.4f} - 0.1", name, slope,
                                                              run.assouad.value));
      trail += fmt::format("{}{} {:.4f} vs {:.4f}", trail.empty() ? "" : ", ", name, slope, run.assouad.value);
    }
    if (v.pass) v.detail = trail;
    return v;
  });

  criterion(9, "byte-identical reruns", 300.0, [&] {
    Tally v;
    const fs::path root = fs::temp_directory_path() / fmt::format("carpet-acceptance-{}", ::getpid());
    fs::remove_all(root);
    std::size_t files = 0, runs = 0;
    const std::vector<std::pair<std::string, std::vector<std::string>>> plan{
        {"centre_line", {"check", "render", "scales", "slice", "tangent", "dim"}},
        {"two_gap", {"check", "render", "slice", "dim"}},
        {"cantor_product", {"check", "dim"}},
    };
    for (const auto& [preset, commands] : plan) {
      for (const auto& command : commands) {
        std::vector<std::pair<std::string, std::string>> snaps[2];
        int codes[2];
        for (int rep = 0; rep < 2; ++rep) {
          cli::RunConfig cfg;
          cfg.command = command;
          cfg.preset = preset;
          cfg.out = root / fmt::format("{}-{}-{}", preset, command, rep);
          codes[rep] = cli::run(cfg);
          snaps[rep] = snapshot(cfg.out);
        }
        ++runs;
        v.require(codes[0] == codes[1], preset + " " + command + " exit codes differ");
        v.require(!snaps[0].empty(), preset + " " + command + " wrote nothing");
        v.require(snaps[0] == snaps[1], preset + " " + command + " outputs differ");
        files += snaps[0].size();
      }
    }
    fs::remove_all(root);
    if (v.pass) v.detail = fmt::format("{} commands, {} files", runs, files);
    return v;
  });

  criterion(10, "Hausdorff metric properties", 60.0, [&] {
    Tally v;
    Rng rng(2024);
    // Dyadic coordinates keep every difference exact; only hypot rounds.
    auto draw = [&] {
      std::vector<Point2> pts(1 + rng.below(12));
      for (auto& p : pts) p = {static_cast<double>(rng.below(1024)) / 1024.0, static_cast<double>(rng.below(1024)) / 1024.0};
      return pts;
    };
    std::size_t sym = 0, ident = 0, tri = 0, oracle = 0;
    for (int k = 0; k < 1000; ++k) {
      const auto a = draw(), b = draw(), c = draw();
      const double ab = hausdorff_distance(a, b), ba = hausdorff_distance(b, a);
      const double bc = hausdorff_distance(b, c), ac = hausdorff_distance(a, c);
      if (ab != ba) ++sym;
      // d_H(A,B) = 0 exactly when A and B hold the same points.
      if (hausdorff_distance(a, a) != 0.0 || (ab == 0.0) != (as_set(a) == as_set(b))) ++ident;
      if (!(ac <= ab + bc)) ++tri;
      if (ab != std::max(brute_directed(a, b), brute_directed(b, a))) ++oracle;
    }
    v.require(sym == 0, fmt::format("{} symmetry failures", sym));
    v.require(ident == 0, fmt::format("{} identity failures", ident));
    v.require(tri == 0, fmt::format("{} triangle failures", tri));
    v.require(oracle == 0, fmt::format("{} disagreements with brute force", oracle));
    if (v.pass) v.detail = "1000 triples";
    return v;
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
