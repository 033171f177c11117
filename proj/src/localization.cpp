#include "strata/localization.hpp"

#include <cmath>
#include <stdexcept>

namespace strata {

namespace {
LocalSample magnify_indices(const PointCloud& x, const std::vector<uint32_t>& idx,
                            std::span<const double> center, double zeta) {
    const std::size_t dim = x.ambient_dim();
    PointCloud out(dim);
    std::vector<double> p(dim);
    for (uint32_t i : idx) {
        auto q = x.point(i);
        double d2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double d = q[k] - center[k];
            d2 += d * d;
        }
        if (d2 * zeta * zeta > 1.0 + 1e-15) continue;
        for (std::size_t k = 0; k < dim; ++k) p[k] = zeta * (q[k] - center[k]);
        out.push_back(std::span<const double>(p.data(), dim));
    }
    return LocalSample(out);
}
}  // namespace

LocalSample magnify(const PointCloud& x, std::span<const double> center, double zeta) {
    if (!(zeta > 0)) throw std::invalid_argument("magnify: zeta must be positive");
    if (!x.empty() && center.size() != x.ambient_dim())
        throw std::invalid_argument("magnify: dimension mismatch");
    std::vector<uint32_t> all(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) all[i] = static_cast<uint32_t>(i);
    return magnify_indices(x, all, center, zeta);
}

LocalSample magnify(const PointCloud& x, const GridIndex& index, std::span<const double> center,
                    double zeta) {
    if (!(zeta > 0)) throw std::invalid_argument("magnify: zeta must be positive");
    auto idx = index.radius_query(center, 1.0 / zeta);
    return magnify_indices(x, idx, center, zeta);
}

BundleSample magnification_bundle(const PointCloud& x, double zeta) {
    if (!(zeta > 0)) throw std::invalid_argument("magnification_bundle: zeta must be positive");
    std::vector<LocalSample> fibers;
    fibers.reserve(x.size());
    if (x.empty()) return BundleSample(x, std::move(fibers));
    GridIndex index(x, 1.0 / zeta);
    for (std::size_t i = 0; i < x.size(); ++i)
        fibers.push_back(magnify(x, index, x.point(i), zeta));
    return BundleSample(x, std::move(fibers));
}

std::vector<LocalSample> tangent_cone_estimate(const PointCloud& x, std::span<const double> center,
                                               std::span<const double> zeta_schedule) {
    if (zeta_schedule.empty())
        throw std::invalid_argument("tangent_cone_estimate: empty schedule");
    for (std::size_t i = 0; i + 1 < zeta_schedule.size(); ++i)
        if (!(zeta_schedule[i] < zeta_schedule[i + 1]))
            throw std::invalid_argument("tangent_cone_estimate: schedule must be strictly increasing");
    std::vector<LocalSample> out;
    out.reserve(zeta_schedule.size());
    for (double zeta : zeta_schedule) out.push_back(magnify(x, center, zeta));
    return out;
}

}  // namespace strata
