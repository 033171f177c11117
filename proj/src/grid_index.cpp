#include "strata/grid_index.hpp"

#include <cmath>
#include <stdexcept>

namespace strata {

namespace {
inline int64_t cell_coord(double v, double cell) {
    return static_cast<int64_t>(std::floor(v / cell));
}

inline uint64_t hash_cells(const int64_t* c, std::size_t dim) {
    uint64_t h = 1469598103934665603ull;
    for (std::size_t k = 0; k < dim; ++k) {
        uint64_t v = static_cast<uint64_t>(c[k]);
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    }
    return h;
}
}  // namespace

GridIndex::GridIndex(const PointCloud& cloud, double cell_size)
    : cloud_(cloud), cell_(cell_size) {
    if (!(cell_size > 0.0)) throw std::invalid_argument("GridIndex: cell_size must be positive");
    cells_.reserve(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        cells_[key_of(cloud.point(i))].push_back(static_cast<uint32_t>(i));
}

uint64_t GridIndex::key_of(std::span<const double> p) const {
    int64_t c[16];
    const std::size_t dim = p.size();
    if (dim > 16) throw std::invalid_argument("GridIndex: ambient dimension too large");
    for (std::size_t k = 0; k < dim; ++k) c[k] = cell_coord(p[k], cell_);
    return hash_cells(c, dim);
}

std::vector<uint32_t> GridIndex::radius_query(std::span<const double> q, double r) const {
    const std::size_t dim = cloud_.ambient_dim();
    std::vector<uint32_t> out;
    if (cloud_.empty()) return out;
    const double r2 = r * r;
    const int64_t span = static_cast<int64_t>(std::ceil(r / cell_)) + 1;

    std::vector<int64_t> lo(dim), hi(dim), cur(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const int64_t c = cell_coord(q[k], cell_);
        lo[k] = c - span;
        hi[k] = c + span;
        cur[k] = lo[k];
    }
    // Iterate the axis-aligned block of cells covering the ball.
    while (true) {
        const uint64_t key = hash_cells(cur.data(), dim);
        auto it = cells_.find(key);
        if (it != cells_.end()) {
            for (uint32_t idx : it->second) {
                auto p = cloud_.point(idx);
                double d2 = 0.0;
                for (std::size_t k = 0; k < dim; ++k) {
                    const double d = p[k] - q[k];
                    d2 += d * d;
                }
                if (d2 <= r2) out.push_back(idx);
            }
        }
        std::size_t k = 0;
        while (k < dim && ++cur[k] > hi[k]) {
            cur[k] = lo[k];
            ++k;
        }
        if (k == dim) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace strata
