#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carpet/affine.hpp"

namespace carpet::cli {

struct CheckPreset {
  // Conditions that must hold for exit status 0: SSC, H1, H2, H2prime, H2doubleprime.
  std::vector<std::string> require{"SSC", "H1", "H2"};
  int h2prime_depth = 3;
  int projection_depth = 6;
};

struct RenderPreset {
  int depth = 3;
  int center_line_levels = 2;
  bool projection = true;
  bool gaps = false;
  std::optional<double> dashed_x;
};

struct ScalesPreset {
  std::size_t count = 100;
  // t is drawn log-uniformly from [ᾱ^t_lo_power, ᾱ^t_hi_power].
  int t_lo_power = 8;
  int t_hi_power = 3;
  std::uint64_t seed = 1;
  int cert_depth = 6;
  double min_certified_fraction = 0.95;
};

struct SlicePreset {
  std::size_t count = 20;
  std::uint64_t seed = 7;
  int depth = 8;
  // Absolute radii ᾱ^r_min_power .. ᾱ^r_max_power; default range when absent.
  std::optional<int> r_min_power;
  std::optional<int> r_max_power;
};

struct TangentPreset {
  std::size_t windows = 10;
  std::vector<int> K{2, 3, 4};
  std::uint64_t seed = 11;
  std::size_t prefix_length = 5;
  std::size_t cycle_length = 2;
  // t = t_{K_ref} · u with u uniform in [t_lo_fraction, t_hi_fraction].
  int K_ref = 4;
  double t_lo_fraction = 0.3;
  double t_hi_fraction = 0.9;
  int cert_depth = 12;
};

struct TrendWindow {
  Point2 center;
  double t = 0.0;
};

struct TrendPreset {
  std::vector<TrendWindow> windows;
  double resolution = 1.0 / 512.0;
};

struct DimPreset {
  int level_lo = 3;
  int level_hi = 9;
  int slope_span = 0;  // two-point slope span; 0 picks half the level count
  int center_depth = 3;
  std::vector<std::pair<int, int>> assouad_scales{{1, 9}, {2, 10}, {3, 11}};
  double ordering_tolerance = 0.05;
  bool microset = true;
  int n_lo = 3;
  int n_hi = 7;
  int window_budget = 6;
  double gap_tolerance = 0.1;
};

struct Preset {
  std::string name;
  std::string fixture;  // file under the fixtures directory
  CheckPreset check;
  RenderPreset render;
  ScalesPreset scales;
  SlicePreset slice;
  TangentPreset tangent;
  std::optional<TrendPreset> trend;
  DimPreset dim;
};

std::filesystem::path config_dir();
std::filesystem::path fixture_path(const std::string& file);

Preset parse_preset(const std::string& text);
// Loads config/presets/<name>.json.
Preset load_preset(const std::string& name);

}  // namespace carpet::cli
