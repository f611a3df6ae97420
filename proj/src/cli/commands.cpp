#include "carpet/cli/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <iostream>

#include "carpet/conditions.hpp"
#include "carpet/error.hpp"
#include "carpet/geometry.hpp"
#include "carpet/io.hpp"
#include "carpet/rng.hpp"
#include "carpet/svg.hpp"
#include "json.hpp"

namespace carpet::cli {

namespace {

ConditionOptions condition_options(const CarpetSpec& spec) {
  ConditionOptions o;
  o.exact = spec.bounding().exact.has_value();
  return o;
}

std::string verdict_row(const std::string& name, const CheckResult& r) {
  return fmt::format("{},{},{}\n", name, verdict_name(r.verdict), r.certification_depth);
}

ExitCode exit_code_for(Errc code) {
  switch (code) {
    case Errc::InputParse:
    case Errc::EmptySystem:
    case Errc::NonContractive:
    case Errc::Degenerate:
    case Errc::InvalidArgument:
      return kInputError;
    case Errc::DepthBudgetExceeded:
      return kBudgetExceeded;
    default:
      return kComputationError;
  }
}

}  // namespace

bool disjoint(const IntervalUnion1D& a, const IntervalUnion1D& b) {
  for (const auto& x : a.intervals()) {
    for (const auto& y : b.intervals()) {
      if (x.lo <= y.hi && y.lo <= x.hi) return false;
    }
  }
  return true;
}

Outcome cmd_check(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg) {
  Outcome out;
  const auto opts = condition_options(spec);
  const int depth = cfg.depth.value_or(preset.check.projection_depth);
  std::vector<NamedCheck> checks;
  CheckResult ssc;
  ssc.verdict = spec.ssc().certified ? Verdict::Holds : Verdict::Uncertified;
  ssc.certification_depth = spec.ssc().depth;
  checks.push_back({"SSC", ssc});
  checks.push_back({"H1", check_H1(spec)});
  checks.push_back({"H2", check_H2(spec, opts)});
  checks.push_back({"H2prime", check_H2prime(spec, cfg.depth.value_or(preset.check.h2prime_depth), opts)});
  checks.push_back({"H2doubleprime", check_H2doubleprime(spec, opts)});

  std::string table = "condition,verdict,certification_depth\n";
  for (const auto& c : checks) table += verdict_row(c.condition, c.result);
  for (const auto& want : preset.check.require) {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const NamedCheck& c) { return c.condition == want; });
    if (it == checks.end()) throw Error(Errc::InvalidArgument, "unknown condition " + want);
    if (it->result.verdict != Verdict::Holds) out.pass = false;
  }
  const auto proj = horizontal_projection(spec, depth, opts);
  out.files["conditions.csv"] = table;
  out.files["witnesses.csv"] = witnesses_csv(checks);
  out.files["constants.csv"] = constants_csv(spec);
  out.files["projection.csv"] = proj.exact_outer ? intervals_csv(*proj.exact_outer) : intervals_csv(proj.outer);
  for (const auto& c : checks) out.log.push_back(fmt::format("[check] {} {}", c.condition, verdict_name(c.result.verdict)));
  return out;
}

Outcome cmd_render(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg) {
  Outcome out;
  RenderOptions o;
  o.depth = cfg.depth.value_or(preset.render.depth);
  o.center_line_levels = preset.render.center_line_levels;
  o.projection = preset.render.projection;
  o.gaps = preset.render.gaps;
  o.dashed_x = preset.render.dashed_x;
  out.files["construction.svg"] = render_construction_svg(spec, o);
  out.log.push_back(fmt::format("[render] construction rectangles to depth {}", o.depth));
  return out;
}

std::vector<RegularityReport> run_slices(const CarpetSpec& spec, const SlicePreset& p) {
  const auto xs = slice_abscissae(spec, p.count, p.seed);
  std::optional<ScaleRange> range;
  if (p.r_min_power && p.r_max_power) {
    range = ScaleRange{std::pow(spec.alpha_bar(), *p.r_min_power), std::pow(spec.alpha_bar(), *p.r_max_power)};
  }
  return verify_slice_regularity(spec, xs, p.depth, range);
}

Outcome cmd_slice(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg) {
  Outcome out;
  SlicePreset p = preset.slice;
  if (cfg.depth) p.depth = *cfg.depth;
  const auto rows = run_slices(spec, p);
  for (const auto& r : rows) out.pass = out.pass && r.pass();
  out.files["regularity.csv"] = regularity_csv(rows);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.files[fmt::format("slices/slice_{:03}.csv", i)] = intervals_csv(vertical_slice(spec, rows[i].x, p.depth));
  }
  out.log.push_back(fmt::format("[slice] {} slices at depth {}, {}", rows.size(), p.depth, out.pass ? "all pass" : "FAIL"));
  return out;
}

TangentRun run_tangent_windows(const CarpetSpec& spec, const TangentPreset& p) {
  if (p.K.empty()) throw Error(Errc::InvalidArgument, "tangent preset lists no K");
  TangentRun run;
  const double t_ref = analyze_endings(spec, p.K_ref).t_K;
  Rng rng(p.seed);
  EpsPatternOptions opts;
  opts.cert_depth = p.cert_depth;
  // Windows whose n(i,t) cannot be decided are redrawn, and counted.
  const std::size_t max_draws = 20 * p.windows + 20;
  for (std::size_t draw = 0; run.windows < p.windows; ++draw) {
    if (draw == max_draws) throw Error(Errc::Undecidable, "too many windows with undecidable n(i,t)");
    InfiniteWord w;
    for (std::size_t k = 0; k < p.prefix_length; ++k) w.prefix.push_back(static_cast<Symbol>(rng.below(spec.size())));
    for (std::size_t k = 0; k < p.cycle_length; ++k) w.cycle.push_back(static_cast<Symbol>(rng.below(spec.size())));
    const double t = t_ref * rng.uniform(p.t_lo_fraction, p.t_hi_fraction);
    std::vector<EpsPatternReport> reps;
    try {
      for (int K : p.K) reps.push_back(verify_epspatterns(spec, w, t, K, opts));
    } catch (const Error& e) {
      if (e.code() != Errc::Undecidable) throw;
      ++run.skipped;
      continue;
    }
    for (const auto& r : reps) run.bounds_ok = run.bounds_ok && r.pass;
    // A residual already under its discretisation slack has nothing left to lose.
    const bool resolved = reps.front().residual <= reps.front().slack;
    if (reps.size() > 1 && !resolved && !(reps.back().residual < reps.front().residual)) run.decrease_ok = false;
    for (auto& r : reps) run.reports.push_back(std::move(r));
    ++run.windows;
  }
  return run;
}

TrendRun run_trend(const CarpetSpec& spec, const TrendPreset& p) {
  TrendRun run;
  for (const auto& w : p.windows) {
    const auto cloud = rescale_window_at(spec, Window{w.center, w.t, 1.0}, p.resolution);
    run.rows.push_back({w, fit_product_form(cloud), cloud.points.size()});
  }
  for (std::size_t i = 1; i < run.rows.size(); ++i) {
    const auto& a = run.rows[i - 1].form;
    const auto& b = run.rows[i].form;
    if (b.residual > a.residual + std::max(a.slack, b.slack)) run.monotone = false;
  }
  if (!run.rows.empty()) {
    const auto& f = run.rows.back().form;
    run.finest_separated = !f.c_left.empty() && !f.c_right.empty() && disjoint(f.c_left, f.c_right);
  }
  return run;
}

Outcome cmd_tangent(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg) {
  Outcome out;
  TangentPreset windows = preset.tangent;
  if (cfg.depth) windows.cert_depth = *cfg.depth;
  const auto run = run_tangent_windows(spec, windows);
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (const auto& r : run.reports) all.push_back(nlohmann::ordered_json::parse(tangent_json(r)));
  out.files["tangent.json"] = all.dump(2) + "\n";
  out.pass = run.pass();
  out.log.push_back(fmt::format("[tangent] {} windows ({} redrawn) x {} K: bounds {}, residual decrease {}",
                                run.windows, run.skipped, preset.tangent.K.size(), run.bounds_ok ? "ok" : "FAIL",
                                run.decrease_ok ? "ok" : "FAIL"));
  if (preset.trend) {
    TrendPreset tp = *preset.trend;
    if (cfg.tol) tp.resolution = *cfg.tol;
    const auto trend = run_trend(spec, tp);
    std::string csv = "t,center_x,center_y,points,w,residual,slack,c_left,c_right\n";
    auto parts = [](const IntervalUnion1D& u) {
      std::string s;
      for (const auto& iv : u.intervals()) s += fmt::format("{}[{};{}]", s.empty() ? "" : " ", format_number(iv.lo), format_number(iv.hi));
      return s;
    };
    for (const auto& r : trend.rows) {
      csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", format_number(r.window.t), format_number(r.window.center.x),
                         format_number(r.window.center.y), r.points, format_number(r.form.w),
                         format_number(r.form.residual), format_number(r.form.slack), parts(r.form.c_left),
                         parts(r.form.c_right));
    }
    out.files["trend.csv"] = csv;
    out.pass = out.pass && trend.pass();
    out.log.push_back(fmt::format("[tangent] trend over {} scales: monotone {}, finest separated {}", trend.rows.size(),
                                  trend.monotone ? "ok" : "FAIL", trend.finest_separated ? "ok" : "FAIL"));
  }
  return out;
}

DimRun run_dim(const CarpetSpec& spec, const DimPreset& p) {
  DimRun run;
  const CarpetSpec unit = normalized_to_unit_square(spec);
  const auto schedule = assouad_schedule(unit, p.center_depth, p.assouad_scales);
  int level = p.level_hi;
  for (const auto& s : schedule) level = std::max(level, s.b - 1);
  if (p.microset) level = std::max(level, p.window_budget + p.n_hi);
  const auto cover = carpet_cover(unit, level, certified_cover_depth(unit, level));
  run.minkowski = minkowski_estimate(cover, p.level_lo, p.level_hi, p.slope_span);
  run.assouad = assouad_estimate(cover, schedule);
  run.ordering_ok = run.minkowski.lower_slope <= run.minkowski.upper_slope &&
                    run.minkowski.upper_slope <= run.assouad.value + p.ordering_tolerance;
  if (p.microset) {
    run.microset = microset_search(cover, p.n_lo, p.n_hi, p.window_budget);
    run.gap = microset_dimension_gap(*run.microset, run.assouad, p.gap_tolerance);
  }
  return run;
}

Outcome cmd_dim(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg) {
  Outcome out;
  DimPreset p = preset.dim;
  if (cfg.tol) p.gap_tolerance = *cfg.tol;
  if (cfg.depth) p.level_hi = *cfg.depth;
  const auto run = run_dim(spec, p);
  std::vector<DimensionEstimate> rows{run.minkowski};
  auto lower = run.minkowski;
  lower.method = "minkowski_lower";
  lower.value = lower.adjusted = run.minkowski.lower_slope;
  auto upper = run.minkowski;
  upper.method = "minkowski_upper";
  upper.value = upper.adjusted = run.minkowski.upper_slope;
  rows.push_back(lower);
  rows.push_back(upper);
  rows.push_back(run.assouad);
  if (run.gap) {
    DimensionEstimate m;
    m.method = "microset";
    m.level_lo = p.n_lo;
    m.level_hi = p.n_hi;
    m.value = run.gap->microset_slope;
    m.adjusted = run.gap->microset_slope_adjusted;
    m.samples = run.microset->windows;
    rows.push_back(m);
    out.files["microset.json"] = microset_json(*run.microset);
  }
  out.files["estimates.csv"] = estimates_csv(rows);
  out.pass = run.pass();
  out.log.push_back(fmt::format("[dim] minkowski {} [{}, {}], assouad {}{}", format_number(run.minkowski.value),
                                format_number(run.minkowski.lower_slope), format_number(run.minkowski.upper_slope),
                                format_number(run.assouad.value),
                                run.gap ? fmt::format(", microset {}", format_number(run.gap->microset_slope)) : ""));
  return out;
}

std::vector<ScaleSample> preset_scale_samples(const CarpetSpec& spec, const ScalesPreset& p) {
  const double a = spec.alpha_bar();
  return scale_samples(spec, p.count, std::pow(a, p.t_lo_power), std::pow(a, p.t_hi_power), p.seed);
}

std::vector<ScaleReport> run_scales(const CarpetSpec& spec, const ScalesPreset& p) {
  LittleOptions o;
  o.cert_depth = p.cert_depth;
  return verify_littlethings(spec, preset_scale_samples(spec, p), o);
}

Outcome cmd_scales(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg) {
  Outcome out;
  ScalesPreset p = preset.scales;
  if (cfg.depth) p.cert_depth = *cfg.depth;
  const auto rows = run_scales(spec, p);
  std::size_t certified = 0, passed = 0;
  for (const auto& r : rows) {
    if (r.certified) ++certified;
    if (r.pass()) ++passed;
    if (r.certified && !r.pass()) out.pass = false;
  }
  if (static_cast<double>(certified) < p.min_certified_fraction * static_cast<double>(rows.size())) out.pass = false;
  out.files["scales.csv"] = scale_report_csv(rows);
  out.log.push_back(fmt::format("[scales] {}/{} samples pass, {} certified", passed, rows.size(), certified));
  return out;
}

int run(const RunConfig& cfg) {
  try {
    if (cfg.tol && !(*cfg.tol > 0.0 && *cfg.tol < 1.0)) throw Error(Errc::InvalidArgument, "--tol must lie in (0,1)");
    if (cfg.depth && *cfg.depth < 0) throw Error(Errc::InvalidArgument, "--depth must be nonnegative");
    const Preset preset = load_preset(cfg.preset);
    std::filesystem::path input = cfg.input;
    if (input.empty()) {
      if (preset.fixture.empty()) throw Error(Errc::InputParse, "no --input and the preset names no fixture");
      input = fixture_path(preset.fixture);
    }
    ValidateOptions vo;
    vo.budget = word_budget_from_env();
    const CarpetSpec spec = validate_carpet(read_maps_file(input), vo);
    std::cerr << fmt::format("[{}] {} maps from {}\n", cfg.command, spec.size(), input.filename().string());

    Outcome out;
    if (cfg.command == "check") out = cmd_check(spec, preset, cfg);
    else if (cfg.command == "render") out = cmd_render(spec, preset, cfg);
    else if (cfg.command == "slice") out = cmd_slice(spec, preset, cfg);
    else if (cfg.command == "tangent") out = cmd_tangent(spec, preset, cfg);
    else if (cfg.command == "dim") out = cmd_dim(spec, preset, cfg);
    else if (cfg.command == "scales") out = cmd_scales(spec, preset, cfg);
    else throw Error(Errc::InvalidArgument, "unknown command " + cfg.command);

    for (const auto& line : out.log) std::cerr << line << '\n';
    for (const auto& [name, content] : out.files) {
      const auto path = cfg.out / name;
      std::filesystem::create_directories(path.parent_path());
      write_file_atomic(path, content);
    }
    return out.pass ? kPass : kAssertionFailed;
  } catch (const Error& e) {
    std::cerr << "carpet-lab: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "carpet-lab: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace carpet::cli
