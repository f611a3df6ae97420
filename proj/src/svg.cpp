#include "carpet/svg.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "carpet/conditions.hpp"
#include "carpet/error.hpp"

namespace carpet {

namespace {

// Maps a world rectangle to pixels with y pointing up.
struct Frame {
  Rect world;
  double scale;
  double margin;
  double px(double x) const { return margin + (x - world.xmin) * scale; }
  double py(double y) const { return margin + (world.ymax - y) * scale; }
};

std::string num(double v) { return fmt::format("{:.4f}", v); }

std::string rect_element(const Frame& f, const Rect& r, std::string_view cls, std::string_view extra = {}) {
  return fmt::format("<rect class=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"{}/>\n", cls, num(f.px(r.xmin)),
                     num(f.py(r.ymax)), num(r.width() * f.scale), num(r.height() * f.scale), extra);
}

std::string line_element(const Frame& f, double x0, double y0, double x1, double y1, std::string_view cls) {
  return fmt::format("<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", cls, num(f.px(x0)),
                     num(f.py(y0)), num(f.px(x1)), num(f.py(y1)));
}

std::string header(double w, double h, std::string_view style) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n<style>\n{}</style>\n",
      num(w), num(h), num(w), num(h), style);
}

HorizontalProjection projection_of(const CarpetSpec& spec, int depth) {
  ConditionOptions opts;
  opts.exact = spec.bounding().exact.has_value();
  return horizontal_projection(spec, depth, opts);
}

}  // namespace

std::string render_construction_svg(const CarpetSpec& spec, const RenderOptions& opts) {
  if (opts.depth < 0) throw Error(Errc::InvalidArgument, "render depth must be nonnegative");
  const Rect& q = spec.q();
  const double side = std::max(q.width(), q.height());
  const double margin = 16.0;
  Frame f{q, (opts.width_px - 2 * margin) / side, margin};
  const double bar = opts.projection ? 24.0 : 0.0;
  const double height_px = q.height() * f.scale + 2 * margin + bar;

  std::string style = ".q{fill:none;stroke:#000;stroke-width:1}\n";
  for (int k = 1; k <= opts.depth; ++k) {
    // Lightness falls with the level so deeper rectangles read darker.
    const int grey = std::max(16, 224 - 208 * k / std::max(opts.depth, 1));
    style += fmt::format(".level-{}{{fill:rgb({},{},{});stroke:none}}\n", k, grey, grey, grey);
  }
  style += ".center-line{stroke:#d00;stroke-width:1}\n";
  style += ".dashed{stroke:#d00;stroke-width:1.5;stroke-dasharray:6 4}\n";
  style += ".projection{fill:#000}\n.gap{fill:#fff;fill-opacity:0.7;stroke:#888;stroke-dasharray:2 2}\n";

  std::string out = header(opts.width_px, height_px, style);
  out += rect_element(f, q, "q");
  BudgetCounter budget(spec.budget());
  std::vector<AffineMap2D> centers;
  auto rec = [&](auto&& self, const AffineMap2D& g, int level) -> void {
    budget.tick();
    if (level > 0) out += rect_element(f, g.image(q), fmt::format("level-{}", level));
    if (level < opts.center_line_levels) centers.push_back(g);
    if (level == opts.depth) return;
    for (const auto& m : spec.maps()) self(self, g * m, level + 1);
  };
  rec(rec, AffineMap2D::identity(), 0);

  if (opts.gaps) {
    const auto p = projection_of(spec, opts.projection_depth);
    for (const auto& m : spec.maps()) {
      const Rect r = m.image(q);
      std::vector<Interval1D> parts;
      for (const auto& iv : p.outer.intervals()) parts.push_back(m.image_x(iv));
      const auto holes = IntervalUnion1D(parts).complement_within(r.x_extent());
      for (const auto& h : holes.intervals()) {
        if (h.hi > h.lo) out += rect_element(f, Rect{h.lo, h.hi, r.ymin, r.ymax}, "gap");
      }
    }
  }
  for (const auto& g : centers) {
    const Rect r = g.image(q);
    const double cx = 0.5 * (r.xmin + r.xmax);
    out += line_element(f, cx, r.ymin, cx, r.ymax, "center-line");
  }
  if (opts.dashed_x) out += line_element(f, *opts.dashed_x, q.ymin, *opts.dashed_x, q.ymax, "dashed");
  if (opts.projection) {
    const auto p = projection_of(spec, opts.projection_depth);
    const double y = f.py(q.ymin) + bar * 0.5;
    for (const auto& iv : p.outer.intervals()) {
      out += fmt::format("<rect class=\"projection\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"4.0000\"/>\n",
                         num(f.px(iv.lo)), num(y), num(std::max((iv.hi - iv.lo) * f.scale, 1.0)));
    }
  }
  out += "</svg>\n";
  return out;
}

std::string render_cloud_svg(const std::vector<Point2>& pts, double radius, std::optional<double> w) {
  const double size = 480.0, margin = 16.0;
  Frame f{Rect{-radius, radius, -radius, radius}, (size - 2 * margin) / (2 * radius), margin};
  std::string out = header(size, size, ".frame{fill:none;stroke:#000}\n.pt{fill:#000}\n.sep{stroke:#d00;stroke-dasharray:6 4}\n");
  out += rect_element(f, f.world, "frame");
  for (const auto& p : pts) {
    out += fmt::format("<circle class=\"pt\" cx=\"{}\" cy=\"{}\" r=\"1\"/>\n", num(f.px(p.x)), num(f.py(p.y)));
  }
  if (w) out += line_element(f, *w, -radius, *w, radius, "sep");
  out += "</svg>\n";
  return out;
}

}  // namespace carpet
