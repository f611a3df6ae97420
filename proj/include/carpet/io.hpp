#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "carpet/conditions.hpp"
#include "carpet/dimension.hpp"
#include "carpet/geometry.hpp"
#include "carpet/ifs.hpp"
#include "carpet/regularity.hpp"
#include "carpet/scales.hpp"
#include "carpet/tangents.hpp"

namespace carpet {

// {"maps":[{"a1":..,"a2":..,"b1":..,"b2":..},...]}. Each number is a JSON
// decimal, read exactly from its literal, or {"num":int,"den":int}.
std::vector<ExactAffineMap> parse_maps_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
std::vector<ExactAffineMap> read_maps_file(const std::filesystem::path& path);

// Writes to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Shortest round-trip decimal; the one number format of every report.
std::string format_number(double v);

std::string constants_csv(const CarpetSpec& spec);

struct NamedCheck {
  std::string condition;
  CheckResult result;
};
std::string witnesses_csv(const std::vector<NamedCheck>& checks);

std::string points_csv(const std::vector<Point2>& pts);
std::string intervals_csv(const IntervalUnion1D& u);
std::string intervals_csv(const ExactIntervalUnion& u);

std::string scale_report_csv(const std::vector<ScaleReport>& rows);
std::string regularity_csv(const std::vector<RegularityReport>& rows);
std::string tangent_json(const EpsPatternReport& report);
std::string estimates_csv(const std::vector<DimensionEstimate>& rows);
std::string microset_json(const MicrosetResult& m);

}  // namespace carpet
