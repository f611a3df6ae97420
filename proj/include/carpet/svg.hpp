#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carpet/ifs.hpp"
#include "carpet/interval_union.hpp"

namespace carpet {

struct RenderOptions {
  int depth = 3;
  // Vertical centre lines of the construction rectangles of levels below this.
  int center_line_levels = 2;
  bool projection = true;  // proj₁E bar under Q
  bool gaps = false;       // x-gaps of each first-level rectangle
  std::optional<double> dashed_x;
  int projection_depth = 6;
  double width_px = 640.0;
};

// Construction rectangles of levels 1..depth as <rect class="level-k">, darker
// with k, over the outline of Q.
std::string render_construction_svg(const CarpetSpec& spec, const RenderOptions& opts = {});

// A point cloud in the square [-radius, radius]², with an optional separating
// line at x = w.
std::string render_cloud_svg(const std::vector<Point2>& pts, double radius, std::optional<double> w = std::nullopt);

}  // namespace carpet
