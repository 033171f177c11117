#pragma once

#include "strata/grid_index.hpp"
#include "strata/sample_spaces.hpp"

namespace strata {

// zeta-magnification of X at x: zeta * (X - x) intersected with the closed
// unit ball. The center x need not belong to X.
LocalSample magnify(const PointCloud& x, std::span<const double> center, double zeta);

// Same, reusing a grid index over x (cell size <= 1/zeta recommended).
LocalSample magnify(const PointCloud& x, const GridIndex& index, std::span<const double> center,
                    double zeta);

// Base = X, fiber at each point = its magnification.
BundleSample magnification_bundle(const PointCloud& x, double zeta);

// Magnifications along a strictly increasing schedule; callers compare the
// entries against analytic cones via local_distance.
std::vector<LocalSample> tangent_cone_estimate(const PointCloud& x, std::span<const double> center,
                                               std::span<const double> zeta_schedule);

}  // namespace strata
