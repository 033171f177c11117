#pragma once

#include <unordered_map>
#include <vector>

#include "strata/point_cloud.hpp"

namespace strata {

// Immutable uniform-grid index over a point cloud, built once per cloud and
// shared across queries. Cells are cubes of side cell_size, keyed by their
// integer coordinates.
class GridIndex {
  public:
    GridIndex(const PointCloud& cloud, double cell_size);

    // Indices of all points with |p - q| <= r (exact test, closed ball).
    std::vector<uint32_t> radius_query(std::span<const double> q, double r) const;

    double cell_size() const { return cell_; }

  private:
    const PointCloud& cloud_;
    double cell_;
    std::unordered_map<uint64_t, std::vector<uint32_t>> cells_;

    uint64_t key_of(std::span<const double> p) const;
};

}  // namespace strata
