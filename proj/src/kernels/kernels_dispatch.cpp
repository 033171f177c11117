#include "strata/kernels.hpp"

#include <cstdlib>

namespace strata::kernels {

namespace detail {
bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}
}  // namespace detail

namespace {
const detail::Backend& select() {
    static const detail::Backend& chosen = []() -> const detail::Backend& {
        if (std::getenv("STRATA_FORCE_SCALAR") != nullptr) return detail::scalar_backend();
        if (detail::avx2_supported()) return detail::avx2_backend();
        return detail::scalar_backend();
    }();
    return chosen;
}
}  // namespace

void sqdist_row(const double* q, const PackedPoints& p, double* out) {
    select().sqdist_row(q, p, out);
}

double min_sqdist(const double* q, const PackedPoints& p, double cutoff_sq) {
    return select().min_sqdist(q, p, cutoff_sq);
}

double directed_hausdorff_sq(const PackedPoints& a, const PackedPoints& b) {
    return select().directed_hausdorff_sq(a, b);
}

const std::string& backend() {
    static const std::string name = select().name;
    return name;
}

}  // namespace strata::kernels
