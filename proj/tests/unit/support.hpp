#pragma once

#include <string>

#include "carpet/cli/presets.hpp"
#include "carpet/ifs.hpp"
#include "carpet/io.hpp"

namespace test_support {

inline carpet::CarpetSpec fixture(const std::string& name) {
  return carpet::validate_carpet(carpet::read_maps_file(carpet::cli::fixture_path(name + ".json")));
}

inline carpet::Rational q(const char* text) { return carpet::Rational(text); }

}  // namespace test_support
