#pragma once

#include <optional>

#include "carpet/geometry.hpp"
#include "carpet/ifs.hpp"
#include "carpet/interval_union.hpp"

namespace carpet {

// proj₁(E) when it can be certified exactly: the depth-m outer projection
// once it is invariant under the horizontal IFS. Empty if not found by
// max_depth.
std::optional<IntervalUnion1D> certified_projection(const CarpetSpec& spec, int max_depth = 8);

// Points within `target` (Hausdorff) of E ∩ region, restricted to cylinders
// meeting the region. A cylinder is emitted as its centre once its diameter
// is below target, or as a horizontal row of points over φ_w(proj₁E) once
// its height is, when the projection is known.
PointSet2D sample_attractor(const CarpetSpec& spec, const Rect& region, double target,
                            const std::optional<IntervalUnion1D>& projection);

}  // namespace carpet
