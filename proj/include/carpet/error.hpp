#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace carpet {

enum class Errc {
  EmptySystem,
  NonContractive,
  Degenerate,
  SymbolOutOfRange,
  NoInvariantStart,
  UncertifiedHull,
  EmptyInput,
  EmptyIntersection,
  NegativeEpsilon,
  DepthBudgetExceeded,
  ScaleOutOfRange,
  EmptyIndexSet,
  Undecidable,
  ResolutionTooCoarse,
  EmptyCloud,
  ScalingBelowOne,
  InputParse,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace carpet
