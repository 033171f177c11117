#include "strata/kernels.hpp"

#include <immintrin.h>

#include <limits>

// AVX2 variants of the distance kernels. Arithmetic per point matches the
// scalar reference exactly: coordinates are accumulated in the same order
// with separate multiply and add (no FMA), so results are bit-identical and
// the equivalence tests can compare with ==.

namespace strata::kernels {
namespace {

inline double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_min_pd(lo, hi);
    m = _mm_min_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

void sqdist_row_avx2(const double* q, const PackedPoints& p, double* out) {
    const std::size_t n = p.n;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_setzero_pd());
    for (; i < n; ++i) out[i] = 0.0;
    for (std::size_t k = 0; k < p.dim; ++k) {
        const double qk = q[k];
        const __m256d vq = _mm256_set1_pd(qk);
        const double* c = p.col.data() + k * n;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            __m256d d = _mm256_sub_pd(_mm256_loadu_pd(c + j), vq);
            __m256d acc = _mm256_loadu_pd(out + j);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
            _mm256_storeu_pd(out + j, acc);
        }
        for (; j < n; ++j) {
            const double d = c[j] - qk;
            out[j] += d * d;
        }
    }
}

double min_sqdist_avx2(const double* q, const PackedPoints& p, double cutoff_sq) {
    const std::size_t n = p.n;
    if (n == 0) return std::numeric_limits<double>::infinity();
    const std::size_t dim = p.dim;
    const double* base = p.col.data();
    double best = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < dim; ++k) {
            __m256d d = _mm256_sub_pd(_mm256_loadu_pd(base + k * n + i), _mm256_set1_pd(q[k]));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
        }
        const double m = hmin(acc);
        if (m < best) {
            best = m;
            if (best <= cutoff_sq) return best;
        }
    }
    for (; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double d = base[k * n + i] - q[k];
            acc += d * d;
        }
        if (acc < best) {
            best = acc;
            if (best <= cutoff_sq) return best;
        }
    }
    return best;
}

double directed_hausdorff_sq_avx2(const PackedPoints& a, const PackedPoints& b) {
    if (a.n == 0) return 0.0;
    if (b.n == 0) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::vector<double> q(a.dim);
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t k = 0; k < a.dim; ++k) q[k] = a.coord(i, k);
        const double m = min_sqdist_avx2(q.data(), b, worst);
        if (m > worst) worst = m;
    }
    return worst;
}

}  // namespace

namespace detail {
const Backend& avx2_backend() {
    static const Backend b{&sqdist_row_avx2, &min_sqdist_avx2,
                           &directed_hausdorff_sq_avx2, "avx2"};
    return b;
}
}  // namespace detail

}  // namespace strata::kernels
