#include "strata/sample_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace strata {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_same_dim(const PointCloud& a, const PointCloud& b, const char* who) {
    if (a.ambient_dim() != b.ambient_dim() && !a.empty() && !b.empty())
        throw std::invalid_argument(std::string(who) + ": ambient dimension mismatch");
}

std::vector<double> point_vec(const PointCloud& c, std::size_t i) {
    auto p = c.point(i);
    return {p.begin(), p.end()};
}
}  // namespace

StratifiedSample::StratifiedSample(PointCloud c, std::vector<uint8_t> mask)
    : cloud(std::move(c)), singular_mask(std::move(mask)) {
    if (singular_mask.size() != cloud.size())
        throw std::invalid_argument("StratifiedSample: mask length != point count");
}

PointCloud StratifiedSample::singular_part() const {
    PointCloud out(cloud.ambient_dim());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (singular_mask[i]) out.push_back(cloud.point(i));
    return out;
}

std::size_t StratifiedSample::singular_count() const {
    return static_cast<std::size_t>(
        std::count(singular_mask.begin(), singular_mask.end(), uint8_t(1)));
}

StronglyStratifiedSample::StronglyStratifiedSample(PointCloud c, std::vector<double> s_values)
    : cloud(std::move(c)), s(std::move(s_values)) {
    if (s.size() != cloud.size())
        throw std::invalid_argument("StronglyStratifiedSample: s length != point count");
    for (double v : s)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("StronglyStratifiedSample: s value out of [0,1]");
}

DiagramSample::DiagramSample(PointCloud p, PointCloud pq, PointCloud q)
    : d_p(std::move(p)), d_pq(std::move(pq)), d_q(std::move(q)) {
    auto contains_all = [](const PointCloud& sub, const PointCloud& sup) {
        std::map<std::vector<double>, int> pts;
        for (std::size_t i = 0; i < sup.size(); ++i) ++pts[point_vec(sup, i)];
        for (std::size_t i = 0; i < sub.size(); ++i)
            if (pts.find(point_vec(sub, i)) == pts.end()) return false;
        return true;
    };
    if (!d_pq.empty()) {
        if (!contains_all(d_pq, d_p) || !contains_all(d_pq, d_q))
            throw std::invalid_argument("DiagramSample: d_pq not contained in d_p and d_q");
    }
}

LocalSample::LocalSample(const PointCloud& c) : cloud(c.ambient_dim()) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto p = c.point(i);
        double n2 = 0.0;
        for (double v : p) n2 += v * v;
        if (n2 <= 1.0 + 1e-15) cloud.push_back(p);
    }
}

BundleSample::BundleSample(PointCloud b, std::vector<LocalSample> f)
    : base(std::move(b)), fibers(std::move(f)) {
    if (fibers.size() != base.size())
        throw std::invalid_argument("BundleSample: fiber count != base point count");
}

double dist_to_set(std::span<const double> x, const PointCloud& cloud) {
    if (cloud.empty()) return kInf;
    if (x.size() != cloud.ambient_dim())
        throw std::invalid_argument("dist_to_set: dimension mismatch");
    return std::sqrt(kernels::min_sqdist(x.data(), cloud.packed(), -1.0));
}

double hausdorff(const PointCloud& x, const PointCloud& y) {
    if (x.empty() && y.empty()) return 0.0;
    if (x.empty() || y.empty()) return kInf;
    check_same_dim(x, y, "hausdorff");
    const double d1 = kernels::directed_hausdorff_sq(x.packed(), y.packed());
    const double d2 = kernels::directed_hausdorff_sq(y.packed(), x.packed());
    return std::sqrt(std::max(d1, d2));
}

double stratified_distance(const StratifiedSample& a, const StratifiedSample& b) {
    check_same_dim(a.cloud, b.cloud, "stratified_distance");
    const double d_total = hausdorff(a.cloud, b.cloud);
    const double d_sing = hausdorff(a.singular_part(), b.singular_part());
    return std::max(d_total, d_sing);
}

namespace {
// max_{x in a} min_{y in b} max(|x-y|, |s_a(x)-s_b(y)|)
double directed_strong(const StronglyStratifiedSample& a, const StronglyStratifiedSample& b) {
    if (a.cloud.empty()) return 0.0;
    if (b.cloud.empty()) return kInf;
    const auto& pb = b.cloud.packed();
    std::vector<double> row(b.cloud.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.cloud.size(); ++i) {
        kernels::sqdist_row(a.cloud.point(i).data(), pb, row.data());
        double best = kInf;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double v = std::max(std::sqrt(row[j]), std::abs(a.s[i] - b.s[j]));
            best = std::min(best, v);
        }
        worst = std::max(worst, best);
    }
    return worst;
}
}  // namespace

double strong_distance(const StronglyStratifiedSample& a, const StronglyStratifiedSample& b) {
    check_same_dim(a.cloud, b.cloud, "strong_distance");
    return std::max(directed_strong(a, b), directed_strong(b, a));
}

double diagram_distance(const DiagramSample& a, const DiagramSample& b) {
    check_same_dim(a.d_q, b.d_q, "diagram_distance");
    return std::max({hausdorff(a.d_p, b.d_p), hausdorff(a.d_pq, b.d_pq),
                     hausdorff(a.d_q, b.d_q)});
}

double local_distance(const LocalSample& a, const LocalSample& b) {
    return hausdorff(a.cloud, b.cloud);
}

namespace {
double directed_bundle(const BundleSample& a, const BundleSample& b) {
    if (a.base.empty()) return 0.0;
    if (b.base.empty()) return kInf;
    const auto& pb = b.base.packed();
    std::vector<double> row(b.base.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.base.size(); ++i) {
        kernels::sqdist_row(a.base.point(i).data(), pb, row.data());
        double best = kInf;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double base_d = std::sqrt(row[j]);
            if (base_d >= best) continue;
            const double v = std::max(base_d, local_distance(a.fibers[i], b.fibers[j]));
            best = std::min(best, v);
        }
        worst = std::max(worst, best);
    }
    return worst;
}
}  // namespace

double bundle_distance(const BundleSample& a, const BundleSample& b) {
    check_same_dim(a.base, b.base, "bundle_distance");
    return std::max(directed_bundle(a, b), directed_bundle(b, a));
}

}  // namespace strata
