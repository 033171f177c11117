#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "strata/sample_spaces.hpp"

namespace strata {

// Implicit-variety catalog entry: f and its gradient, with a default
// enclosing box for rejection sampling.
struct ImplicitVariety {
    std::size_t ambient_dim;
    std::function<double(std::span<const double>)> f;
    std::function<void(std::span<const double>, std::span<double>)> grad;
    std::vector<double> box_lo, box_hi;
};

// Names: "lemniscate" (param s), "two_circles", "wedge_circles", "cyclide",
// "circle". Throws on unknown name.
ImplicitVariety implicit_catalog(const std::string& kind, double param = 0.0);

struct VarietySpec {
    std::string kind;
    double param = 0.0;        // family parameter (lemniscate s)
    double tolerance = 0.05;   // rejection band |f| <= tolerance
    bool refine = true;        // Newton-project onto |f| <= 1e-9
    double noise_sigma = 0.0;  // isotropic Gaussian added after projection,
                               // clipped at 3 sigma
    uint64_t seed = 0;
    std::vector<double> box_lo, box_hi;  // empty = catalog default
};

PointCloud sample_variety(const VarietySpec& spec, std::size_t n);

// Sample of V^s = {x | x1^4 - x1^2 + x2^2 = s}. Throws when the level set is
// empty (s < -1/4).
PointCloud lemniscate_family(double s, std::size_t n, uint64_t seed, double noise_sigma = 0.0);

// Singular mask |grad f(x)| <= 3 sqrt(s); s must be positive.
StratifiedSample jacobian_stratification(const PointCloud& x, double s);

// Catalog generators (deterministic given the seed).
PointCloud two_circles(std::size_t n, uint64_t seed, double noise_sigma = 0.0);
PointCloud wedge_circles(std::size_t n, uint64_t seed, double noise_sigma = 0.0);
PointCloud cyclide(std::size_t n, uint64_t seed, double noise_sigma = 0.0);
PointCloud circle_with_diameter(std::size_t n, uint64_t seed, double noise_sigma = 0.0);
PointCloud pinched_torus(std::size_t n, uint64_t seed, double noise_sigma = 0.0);
PointCloud unit_circle(std::size_t n, uint64_t seed, double noise_sigma = 0.0);

// Ground-truth singular sets where the catalog fixes one (none for the
// cyclide). Empty optional if the space has no asserted singular set.
std::optional<PointCloud> ground_truth_singular(const std::string& kind);

// Dense deterministic discretization used as the Hausdorff reference.
PointCloud dense_reference(const std::string& kind, std::size_t n, double param = 0.0);

// Grid sample (spacing 0.01) of the known tangent cone of (space_id, x);
// throws for pairs outside the catalog.
LocalSample analytic_tangent_cone(const std::string& space_id, std::span<const double> x);

// Seed-splitting helper: independent stream for (seed, purpose).
uint64_t split_seed(uint64_t seed, const std::string& purpose);

}  // namespace strata
