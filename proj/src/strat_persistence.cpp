#include "strata/strat_persistence.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace strata {

void DiagramParams::validate() const {
    if (!(0.0 < v_low && v_low < v_up && v_up < 1.0))
        throw std::invalid_argument("DiagramParams: need 0 < v_low < v_up < 1");
}

DiagramSample diagification(const StronglyStratifiedSample& sample, DiagramParams v) {
    v.validate();
    const std::size_t dim = sample.cloud.ambient_dim();
    PointCloud p(dim), pq(dim), q(dim);
    for (std::size_t i = 0; i < sample.cloud.size(); ++i) {
        const double s = sample.s[i];
        auto pt = sample.cloud.point(i);
        if (s <= v.v_up) p.push_back(pt);
        if (v.v_low <= s && s <= v.v_up) pq.push_back(pt);
        if (v.v_low <= s) q.push_back(pt);
    }
    return DiagramSample(std::move(p), std::move(pq), std::move(q));
}

StratifiedFiltration stratified_cech(const DiagramSample& d, int max_dim, double max_radius) {
    StratifiedFiltration sf;
    sf.max_dim = max_dim;
    sf.max_radius = max_radius;
    sf.p = std::make_shared<FilteredComplex>(cech_filtration(d.d_p, max_dim, max_radius));
    sf.pq = std::make_shared<FilteredComplex>(cech_filtration(d.d_pq, max_dim, max_radius));
    sf.q = std::make_shared<FilteredComplex>(cech_filtration(d.d_q, max_dim, max_radius));
    sf.pq_to_p = inclusion_of_subsample(sf.pq, sf.p);
    sf.pq_to_q = inclusion_of_subsample(sf.pq, sf.q);
    return sf;
}

StratifiedBarcode stratified_barcodes(const StratifiedFiltration& sf,
                                      std::span<const double> h0_scales) {
    StratifiedBarcode out;
    out.p = reduce_barcodes(*sf.p);
    out.pq = reduce_barcodes(*sf.pq);
    out.q = reduce_barcodes(*sf.q);
    for (double alpha : h0_scales) {
        out.h0_scales.push_back(alpha);
        out.h0_maps.emplace_back(h0_induced_map(sf.pq_to_p, alpha),
                                 h0_induced_map(sf.pq_to_q, alpha));
    }
    return out;
}

StratifiedFiltration epers(const StratifiedSample& s, DiagramParams v, int max_dim,
                           double max_radius) {
    return stratified_cech(diagification(strong_str(s), v), max_dim, max_radius);
}

namespace {
// Multiset containment over exact coordinates.
bool cloud_subset(const PointCloud& sub, const PointCloud& sup) {
    std::map<std::vector<double>, int> count;
    for (std::size_t i = 0; i < sup.size(); ++i) {
        auto p = sup.point(i);
        ++count[std::vector<double>(p.begin(), p.end())];
    }
    for (std::size_t i = 0; i < sub.size(); ++i) {
        auto p = sub.point(i);
        auto it = count.find(std::vector<double>(p.begin(), p.end()));
        if (it == count.end() || it->second == 0) return false;
        --it->second;
    }
    return true;
}
}  // namespace

std::vector<StratifiedFiltration> epers_grid(const StratifiedSample& s,
                                             std::span<const DiagramParams> v_grid, int max_dim,
                                             double max_radius) {
    const StronglyStratifiedSample strong = strong_str(s);
    std::vector<DiagramSample> diagrams;
    diagrams.reserve(v_grid.size());
    for (const DiagramParams& v : v_grid) diagrams.push_back(diagification(strong, v));

    // Verify monotonicity over comparable grid entries.
    for (std::size_t i = 0; i < v_grid.size(); ++i)
        for (std::size_t j = 0; j < v_grid.size(); ++j) {
            if (i == j || !v_grid[i].leq(v_grid[j])) continue;
            if (!cloud_subset(diagrams[i].d_p, diagrams[j].d_p) ||
                !cloud_subset(diagrams[i].d_pq, diagrams[j].d_pq) ||
                !cloud_subset(diagrams[i].d_q, diagrams[j].d_q))
                throw std::runtime_error("epers_grid: containment violated on comparable pair");
        }

    std::vector<StratifiedFiltration> out;
    out.reserve(diagrams.size());
    for (const DiagramSample& d : diagrams) out.push_back(stratified_cech(d, max_dim, max_radius));
    return out;
}

double diagram_barcode_distance(const StratifiedBarcode& a, const StratifiedBarcode& b,
                                int degree) {
    return std::max({bottleneck_distance(a.p, b.p, degree),
                     bottleneck_distance(a.pq, b.pq, degree),
                     bottleneck_distance(a.q, b.q, degree)});
}

}  // namespace strata
