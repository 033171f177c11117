#pragma once

#include <span>
#include <vector>

#include "strata/point_cloud.hpp"

namespace strata {

// Pair (X, X_p): cloud plus a boolean mask marking the singular stratum.
struct StratifiedSample {
    PointCloud cloud;
    std::vector<uint8_t> singular_mask;

    StratifiedSample() = default;
    StratifiedSample(PointCloud c, std::vector<uint8_t> mask);

    PointCloud singular_part() const;
    std::size_t singular_count() const;
};

// Pair (X, s) with s : X -> [0,1]; s = 0 marks the most singular points.
struct StronglyStratifiedSample {
    PointCloud cloud;
    std::vector<double> s;

    StronglyStratifiedSample() = default;
    StronglyStratifiedSample(PointCloud c, std::vector<double> s_values);
};

// Triple (D_p, D_pq, D_q) with D_pq contained in both D_p and D_q
// (coordinate-exact containment).
struct DiagramSample {
    PointCloud d_p, d_pq, d_q;

    DiagramSample() = default;
    DiagramSample(PointCloud p, PointCloud pq, PointCloud q);
};

// Cloud truncated to the closed unit ball around the origin; points with
// |x| > 1 are dropped on construction.
struct LocalSample {
    PointCloud cloud;

    LocalSample() = default;
    explicit LocalSample(const PointCloud& c);
};

struct BundleSample {
    PointCloud base;
    std::vector<LocalSample> fibers;

    BundleSample() = default;
    BundleSample(PointCloud b, std::vector<LocalSample> f);
};

// Metrics. All are symmetric Lawvere metrics: values in [0, +inf], zero on
// identical inputs. Empty-set conventions: directed distance from a nonempty
// set to an empty one is +inf, from an empty set to anything 0.
double dist_to_set(std::span<const double> x, const PointCloud& cloud);
double hausdorff(const PointCloud& x, const PointCloud& y);
double stratified_distance(const StratifiedSample& a, const StratifiedSample& b);
double strong_distance(const StronglyStratifiedSample& a, const StronglyStratifiedSample& b);
double diagram_distance(const DiagramSample& a, const DiagramSample& b);
double local_distance(const LocalSample& a, const LocalSample& b);
double bundle_distance(const BundleSample& a, const BundleSample& b);

}  // namespace strata
