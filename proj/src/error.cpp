#include "carpet/error.hpp"

namespace carpet {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptySystem: return "EmptySystem";
    case Errc::NonContractive: return "NonContractive";
    case Errc::Degenerate: return "Degenerate";
    case Errc::SymbolOutOfRange: return "SymbolOutOfRange";
    case Errc::NoInvariantStart: return "NoInvariantStart";
    case Errc::UncertifiedHull: return "UncertifiedHull";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::EmptyIntersection: return "EmptyIntersection";
    case Errc::NegativeEpsilon: return "NegativeEpsilon";
    case Errc::DepthBudgetExceeded: return "DepthBudgetExceeded";
    case Errc::ScaleOutOfRange: return "ScaleOutOfRange";
    case Errc::EmptyIndexSet: return "EmptyIndexSet";
    case Errc::Undecidable: return "Undecidable";
    case Errc::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case Errc::EmptyCloud: return "EmptyCloud";
    case Errc::ScalingBelowOne: return "ScalingBelowOne";
    case Errc::InputParse: return "InputParse";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace carpet
