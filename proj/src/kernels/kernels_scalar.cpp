#include "strata/kernels.hpp"

#include <limits>

namespace strata::kernels {

PackedPoints PackedPoints::from_rows(const double* rows, std::size_t n, std::size_t dim) {
    PackedPoints p(n, dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < dim; ++k)
            p.col[k * n + i] = rows[i * dim + k];
    return p;
}

namespace {

void sqdist_row_scalar(const double* q, const PackedPoints& p, double* out) {
    const std::size_t n = p.n;
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    for (std::size_t k = 0; k < p.dim; ++k) {
        const double qk = q[k];
        const double* c = p.col.data() + k * n;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = c[i] - qk;
            out[i] += d * d;
        }
    }
}

double min_sqdist_scalar(const double* q, const PackedPoints& p, double cutoff_sq) {
    const std::size_t n = p.n;
    if (n == 0) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < p.dim; ++k) {
            const double d = p.col[k * n + i] - q[k];
            acc += d * d;
        }
        if (acc < best) {
            best = acc;
            if (best <= cutoff_sq) return best;
        }
    }
    return best;
}

double directed_hausdorff_sq_scalar(const PackedPoints& a, const PackedPoints& b) {
    if (a.n == 0) return 0.0;
    if (b.n == 0) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::vector<double> q(a.dim);
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t k = 0; k < a.dim; ++k) q[k] = a.coord(i, k);
        const double m = min_sqdist_scalar(q.data(), b, worst);
        if (m > worst) worst = m;
    }
    return worst;
}

}  // namespace

namespace detail {
const Backend& scalar_backend() {
    static const Backend b{&sqdist_row_scalar, &min_sqdist_scalar,
                           &directed_hausdorff_sq_scalar, "scalar"};
    return b;
}
}  // namespace detail

}  // namespace strata::kernels
