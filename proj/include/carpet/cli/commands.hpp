#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "carpet/cli/presets.hpp"
#include "carpet/dimension.hpp"
#include "carpet/ifs.hpp"
#include "carpet/regularity.hpp"
#include "carpet/scales.hpp"
#include "carpet/tangents.hpp"

namespace carpet::cli {

// Process exit codes.
enum ExitCode : int {
  kPass = 0,
  kAssertionFailed = 1,
  kInputError = 2,
  kBudgetExceeded = 3,
  kComputationError = 4,  // a library error other than input or budget
};

struct RunConfig {
  std::string command;
  std::filesystem::path input;  // empty: the preset's fixture
  std::string preset = "centre_line";
  std::filesystem::path out = "out";
  std::optional<int> depth;
  std::optional<double> tol;
};

// Files to write, keyed by path relative to the output directory, plus the
// overall verdict and one log line per stage.
struct Outcome {
  bool pass = true;
  std::map<std::string, std::string> files;
  std::vector<std::string> log;
};

Outcome cmd_check(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg);
Outcome cmd_render(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg);
Outcome cmd_slice(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg);
Outcome cmd_tangent(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg);
Outcome cmd_dim(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg);
Outcome cmd_scales(const CarpetSpec& spec, const Preset& preset, const RunConfig& cfg);

// Loads input and preset, runs the command, writes its files atomically and
// returns the exit code. Errors are reported on stderr.
int run(const RunConfig& cfg);

// Shared by the commands and the acceptance harness.

std::vector<ScaleSample> preset_scale_samples(const CarpetSpec& spec, const ScalesPreset& p);
std::vector<ScaleReport> run_scales(const CarpetSpec& spec, const ScalesPreset& p);
std::vector<RegularityReport> run_slices(const CarpetSpec& spec, const SlicePreset& p);

struct TangentRun {
  std::vector<EpsPatternReport> reports;  // window-major, K as listed
  std::size_t windows = 0;
  std::size_t skipped = 0;  // draws with undecidable n(i,t)
  bool bounds_ok = true;
  bool decrease_ok = true;  // residual at max K below residual at min K, unless already under slack
  bool pass() const noexcept { return bounds_ok && decrease_ok; }
};
TangentRun run_tangent_windows(const CarpetSpec& spec, const TangentPreset& p);

struct TrendRow {
  TrendWindow window;
  ProductForm form;
  std::size_t points = 0;
};
struct TrendRun {
  std::vector<TrendRow> rows;
  bool monotone = true;         // residual_{i+1} <= residual_i + slack
  bool finest_separated = true;  // C_left, C_right nonempty and disjoint at the last window
  bool pass() const noexcept { return monotone && finest_separated; }
};
TrendRun run_trend(const CarpetSpec& spec, const TrendPreset& p);

struct DimRun {
  DimensionEstimate minkowski;
  DimensionEstimate assouad;
  std::optional<MicrosetResult> microset;
  std::optional<MicrosetGap> gap;
  bool ordering_ok = true;  // lower <= upper <= assouad + tolerance
  bool pass() const noexcept { return ordering_ok && (!gap || gap->pass); }
};
DimRun run_dim(const CarpetSpec& spec, const DimPreset& p);

bool disjoint(const IntervalUnion1D& a, const IntervalUnion1D& b);

}  // namespace carpet::cli
