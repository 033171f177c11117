#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "strata/point_cloud.hpp"

namespace strata {

// Simplices up to dimension 3 (the artifact never needs more: degree-q local
// homology with q <= 2 uses complexes of dimension q+1).
struct Simplex {
    std::array<uint32_t, 4> v{};  // sorted vertex ids; entries [0, dim] valid
    uint8_t dim = 0;
    double filt = 0.0;

    std::span<const uint32_t> verts() const { return {v.data(), std::size_t(dim) + 1}; }
};

// Filtered simplicial complex over a point cloud. Simplices are stored in
// filtration order: by (filtration value, dimension, lexicographic vertices),
// which is a valid order (faces precede cofaces).
class FilteredComplex {
  public:
    FilteredComplex() = default;
    FilteredComplex(std::shared_ptr<const PointCloud> cloud, std::vector<uint32_t> vertices,
                    std::vector<Simplex> simplices, int max_dim, double max_radius);

    const PointCloud& cloud() const { return *cloud_; }
    std::shared_ptr<const PointCloud> cloud_ptr() const { return cloud_; }
    const std::vector<uint32_t>& vertices() const { return vertices_; }
    const std::vector<Simplex>& simplices() const { return simplices_; }
    int max_dim() const { return max_dim_; }
    double max_radius() const { return max_radius_; }

    // Index into simplices() of the simplex with the given sorted vertex
    // tuple, or -1. Lookup tables are built on first use.
    int64_t find(std::span<const uint32_t> sorted_verts) const;

    // Face closure + monotone filtration values; throws on violation.
    void validate() const;

  private:
    std::shared_ptr<const PointCloud> cloud_;
    std::vector<uint32_t> vertices_;
    std::vector<Simplex> simplices_;
    int max_dim_ = 0;
    double max_radius_ = 0.0;
    mutable std::vector<std::vector<uint32_t>> by_dim_;  // simplex ids, lex-sorted
    void build_lookup() const;
};

// Simplicial inclusion: vertex_map[source cloud vertex id] = target vertex id.
struct ComplexInclusion {
    std::shared_ptr<const FilteredComplex> source;
    std::shared_ptr<const FilteredComplex> target;
    std::vector<uint32_t> vertex_map;  // kAbsent where undefined
    static constexpr uint32_t kAbsent = UINT32_MAX;

    void validate() const;  // maps simplices to simplices, filt(target) <= filt(source)
};

// Minimal enclosing ball radius of k+1 points (rows of `pts`, k <= 4) in
// R^dim, exact up to floating point (Welzl's algorithm).
double minimal_enclosing_radius(const double* pts, std::size_t count, std::size_t dim);

FilteredComplex cech_filtration(const PointCloud& x, int max_dim, double max_radius);
FilteredComplex rips_filtration(const PointCloud& x, int max_dim, double max_radius);

// Full subcomplex on vertices with |x| >= r plus its inclusion into f.
std::pair<std::shared_ptr<FilteredComplex>, ComplexInclusion> subcomplex_outside_ball(
    std::shared_ptr<const FilteredComplex> f, double r);

// Induced inclusion of the complex of a coordinate-subset cloud.
ComplexInclusion inclusion_of_subsample(std::shared_ptr<const FilteredComplex> f_sub,
                                        std::shared_ptr<const FilteredComplex> f_sup);

// One simplex per line: "v0 v1 ... vk;filtration_value".
void export_complex(const FilteredComplex& f, const std::string& path);

}  // namespace strata
