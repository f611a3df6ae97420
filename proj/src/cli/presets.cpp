#include "carpet/cli/presets.hpp"

#include <cstdlib>

#include "carpet/error.hpp"
#include "carpet/io.hpp"
#include "json.hpp"

namespace carpet::cli {

namespace {

using nlohmann::json;

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <class T>
void read(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

}  // namespace

std::filesystem::path config_dir() {
  if (const char* env = std::getenv("CARPET_LAB_CONFIG")) return env;
  return CARPET_LAB_CONFIG_DIR;
}

std::filesystem::path fixture_path(const std::string& file) { return config_dir() / "fixtures" / file; }

Preset parse_preset(const std::string& text) {
  Preset p;
  try {
    const json j = json::parse(text);
    read(j, "name", p.name);
    read(j, "fixture", p.fixture);
    if (j.contains("check")) {
      const auto& c = j.at("check");
      read(c, "require", p.check.require);
      read(c, "h2prime_depth", p.check.h2prime_depth);
      read(c, "projection_depth", p.check.projection_depth);
    }
    if (j.contains("render")) {
      const auto& c = j.at("render");
      read(c, "depth", p.render.depth);
      read(c, "center_line_levels", p.render.center_line_levels);
      read(c, "projection", p.render.projection);
      read(c, "gaps", p.render.gaps);
      read(c, "dashed_x", p.render.dashed_x);
    }
    if (j.contains("scales")) {
      const auto& c = j.at("scales");
      read(c, "count", p.scales.count);
      read(c, "t_lo_power", p.scales.t_lo_power);
      read(c, "t_hi_power", p.scales.t_hi_power);
      read(c, "seed", p.scales.seed);
      read(c, "cert_depth", p.scales.cert_depth);
      read(c, "min_certified_fraction", p.scales.min_certified_fraction);
    }
    if (j.contains("slice")) {
      const auto& c = j.at("slice");
      read(c, "count", p.slice.count);
      read(c, "seed", p.slice.seed);
      read(c, "depth", p.slice.depth);
      read(c, "r_min_power", p.slice.r_min_power);
      read(c, "r_max_power", p.slice.r_max_power);
    }
    if (j.contains("tangent")) {
      const auto& c = j.at("tangent");
      read(c, "windows", p.tangent.windows);
      read(c, "K", p.tangent.K);
      read(c, "seed", p.tangent.seed);
      read(c, "prefix_length", p.tangent.prefix_length);
      read(c, "cycle_length", p.tangent.cycle_length);
      read(c, "K_ref", p.tangent.K_ref);
      read(c, "t_lo_fraction", p.tangent.t_lo_fraction);
      read(c, "t_hi_fraction", p.tangent.t_hi_fraction);
      read(c, "cert_depth", p.tangent.cert_depth);
    }
    if (j.contains("trend")) {
      const auto& c = j.at("trend");
      TrendPreset t;
      read(c, "resolution", t.resolution);
      for (const auto& w : c.at("windows")) {
        const auto xy = w.at("center").get<std::vector<double>>();
        if (xy.size() != 2) throw Error(Errc::InputParse, "trend window centre needs two coordinates");
        t.windows.push_back({{xy[0], xy[1]}, w.at("t").get<double>()});
      }
      p.trend = std::move(t);
    }
    if (j.contains("dim")) {
      const auto& c = j.at("dim");
      read(c, "level_lo", p.dim.level_lo);
      read(c, "level_hi", p.dim.level_hi);
      read(c, "slope_span", p.dim.slope_span);
      read(c, "center_depth", p.dim.center_depth);
      read(c, "assouad_scales", p.dim.assouad_scales);
      read(c, "ordering_tolerance", p.dim.ordering_tolerance);
      read(c, "microset", p.dim.microset);
      read(c, "n_lo", p.dim.n_lo);
      read(c, "n_hi", p.dim.n_hi);
      read(c, "window_budget", p.dim.window_budget);
      read(c, "gap_tolerance", p.dim.gap_tolerance);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::InputParse, std::string("bad preset: ") + e.what());
  }
  return p;
}

Preset load_preset(const std::string& name) {
  const auto path = config_dir() / "presets" / (name + ".json");
  if (!std::filesystem::exists(path)) throw Error(Errc::InputParse, "unknown preset " + name);
  return parse_preset(read_text_file(path));
}

}  // namespace carpet::cli
