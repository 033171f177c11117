#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace strata::kernels {

// Coordinate-major panel of points: coord(i, k) = col[k * n + i].
// The layout keeps the inner loops over points contiguous so the AVX2
// variants can process four points per iteration.
struct PackedPoints {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<double> col;

    PackedPoints() = default;
    PackedPoints(std::size_t n_, std::size_t dim_) : n(n_), dim(dim_), col(n_ * dim_, 0.0) {}

    double coord(std::size_t i, std::size_t k) const { return col[k * n + i]; }
    void set(std::size_t i, std::size_t k, double v) { col[k * n + i] = v; }

    static PackedPoints from_rows(const double* rows, std::size_t n, std::size_t dim);
};

// Squared distances from query point q (dim coords) to every point of P.
void sqdist_row(const double* q, const PackedPoints& p, double* out);

// min_i |q - p_i|^2; returns +inf for an empty panel. Scans stop early once
// a value <= cutoff_sq is seen (pass -1 to disable).
double min_sqdist(const double* q, const PackedPoints& p, double cutoff_sq);

// max_a min_b |a - b|^2, the squared directed Hausdorff distance.
// Empty a -> 0, empty b -> +inf (with nonempty a).
double directed_hausdorff_sq(const PackedPoints& a, const PackedPoints& b);

// Name of the active backend ("avx2" or "scalar"). Selection happens once,
// at first use: AVX2 when the CPU supports it and STRATA_FORCE_SCALAR is not
// set in the environment.
const std::string& backend();

// Internal: per-backend entry points, exposed for equivalence tests.
namespace detail {
struct Backend {
    void (*sqdist_row)(const double*, const PackedPoints&, double*);
    double (*min_sqdist)(const double*, const PackedPoints&, double);
    double (*directed_hausdorff_sq)(const PackedPoints&, const PackedPoints&);
    const char* name;
};
const Backend& scalar_backend();
const Backend& avx2_backend();   // valid only if avx2_supported()
bool avx2_supported();
}  // namespace detail

}  // namespace strata::kernels
