#pragma once

#include <optional>

#include "strata/localization.hpp"
#include "strata/persistence.hpp"
#include "strata/sample_spaces.hpp"

namespace strata {

enum class PhiKind { subspace, subspace_directed, local_homology };

// Settings for the regularity score Phi : local samples -> [0,1].
struct PhiSpec {
    PhiKind kind = PhiKind::subspace;
    int q = 1;  // target regular dimension

    // subspace / subspace_directed: derivative-free search over q-planes.
    double grid_spacing = 0.05;  // V cap B1 discretization (two-sided kind)
    int restarts = 3;
    int max_iter = 200;
    double tol = 1e-6;

    // local_homology: reference disk grid spacing and optional cap on the
    // fiber size (0 = use every point).
    double ref_spacing = 0.05;
    std::size_t max_fiber_points = 0;

    void validate(std::size_t ambient_dim) const;
};

PhiKind phi_kind_from_string(const std::string& name);
std::string to_string(PhiKind kind);

// Barcode of the pair (thicken(D^q), thicken(D^q) minus the open 1/2-ball)
// over the window [0, 1/2), computed from a grid sample of the unit q-disk
// and cached per (q, spacing).
struct ReferenceBarcode {
    int q = 1;
    double spacing = 0.05;
    Barcode barcode;
};

const ReferenceBarcode& reference_barcode(int q, double spacing);

double phi_subspace(const LocalSample& local, int q, const PhiSpec& spec);
double phi_subspace_directed(const LocalSample& local, int q, const PhiSpec& spec);
double phi_local_homology(const LocalSample& local, const PhiSpec& spec,
                          const ReferenceBarcode& ref);

// Dispatch on spec.kind (fetches the cached reference when needed).
double phi_value(const LocalSample& local, const PhiSpec& spec);

// Relative persistence of a local sample against its outside-half subcomplex,
// over the window [0, 1/2); deaths at the window end are reported as 1/2.
// This is the quantity compared against the reference barcode.
Barcode local_homology_barcode(const PointCloud& local_points, int q,
                               std::size_t max_fiber_points = 0);

StronglyStratifiedSample phi_pushforward(const BundleSample& bundle, const PhiSpec& spec);

// s(x) = min{ dist(x, X_p), 1 }; identically 1 when X_p is empty.
StronglyStratifiedSample strong_str(const StratifiedSample& sample);

// Singular stratum = s^{-1}[0, u].
StratifiedSample forget_str(const StronglyStratifiedSample& sample, double u);

// forget_str . phi_pushforward . magnification_bundle, exactly.
StratifiedSample phi_stratify(const PointCloud& x, double zeta, double u, const PhiSpec& spec);

// Connected components under |x - y| <= radius linking; labels are
// 0..k-1 in order of first appearance.
std::vector<int> cluster_labels(const PointCloud& x, double radius);
std::size_t cluster_count(const PointCloud& x, double radius);

}  // namespace strata
