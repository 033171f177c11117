#pragma once

#include "strata/persistence.hpp"
#include "strata/phi.hpp"

namespace strata {

// Band parameters 0 < v_low < v_up < 1, ordered by reverse inclusion of
// bands: v <= v' iff v'_low <= v_low and v_up <= v'_up.
struct DiagramParams {
    double v_low = 0.2;
    double v_up = 0.3;

    void validate() const;
    bool leq(const DiagramParams& other) const {
        return other.v_low <= v_low && v_up <= other.v_up;
    }
};

// Three filtered Cech complexes with the band included in both sides.
struct StratifiedFiltration {
    std::shared_ptr<FilteredComplex> p, pq, q;
    ComplexInclusion pq_to_p, pq_to_q;
    int max_dim = 2;
    double max_radius = 0.5;
};

struct StratifiedBarcode {
    Barcode p, pq, q;
    std::vector<double> h0_scales;              // scales of the entries below
    std::vector<std::pair<H0Map, H0Map>> h0_maps;  // (pq->p, pq->q) per scale

    const Barcode& flag(int i) const { return i == 0 ? p : (i == 1 ? pq : q); }
};

// The three sub/super/band level sets (closed inequalities).
DiagramSample diagification(const StronglyStratifiedSample& sample, DiagramParams v);

StratifiedFiltration stratified_cech(const DiagramSample& d, int max_dim, double max_radius);

StratifiedBarcode stratified_barcodes(const StratifiedFiltration& sf,
                                      std::span<const double> h0_scales = {});

// stratified_cech . diagification . strong_str
StratifiedFiltration epers(const StratifiedSample& s, DiagramParams v, int max_dim,
                           double max_radius);

// One filtration per grid entry; for comparable parameters the componentwise
// containment of the diagram samples is verified (throws on violation).
std::vector<StratifiedFiltration> epers_grid(const StratifiedSample& s,
                                             std::span<const DiagramParams> v_grid, int max_dim,
                                             double max_radius);

// max over the three flags of the per-degree bottleneck distance.
double diagram_barcode_distance(const StratifiedBarcode& a, const StratifiedBarcode& b,
                                int degree);

}  // namespace strata
