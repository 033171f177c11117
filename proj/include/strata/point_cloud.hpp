#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "strata/kernels.hpp"

namespace strata {

// Finite multiset of points in R^N, row-major coordinates. Immutable by
// convention after construction; all operations on it are pure.
class PointCloud {
  public:
    PointCloud() = default;
    explicit PointCloud(std::size_t ambient_dim) : dim_(ambient_dim) {}
    PointCloud(std::size_t ambient_dim, std::vector<double> coords);

    std::size_t ambient_dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const { return coords_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    const std::vector<double>& coords() const { return coords_; }

    void push_back(std::span<const double> p);
    void push_back(std::initializer_list<double> p);

    // Coordinate-major copy for the distance kernels, built on demand and
    // cached. The cache is created eagerly by ensure_packed() when a caller
    // wants to share the cloud across threads afterwards.
    const kernels::PackedPoints& packed() const;
    void ensure_packed() const { (void)packed(); }

    bool operator==(const PointCloud& o) const {
        return dim_ == o.dim_ && coords_ == o.coords_;
    }

  private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
    mutable kernels::PackedPoints packed_;
    mutable bool packed_valid_ = false;
};

PointCloud translate(const PointCloud& x, std::span<const double> t);
PointCloud scale(const PointCloud& x, double c);

// CSV with header x0,...,x{N-1}[,stratum][,s]; stratum in {p,q}, s in [0,1].
struct CsvCloud {
    PointCloud cloud;
    bool has_stratum = false;
    bool has_s = false;
    std::vector<uint8_t> singular;  // stratum column, 1 = p
    std::vector<double> s;          // s column
};

CsvCloud read_cloud_csv(const std::string& path);
void write_cloud_csv(const std::string& path, const PointCloud& cloud,
                     const std::vector<uint8_t>* singular = nullptr,
                     const std::vector<double>* s = nullptr);

}  // namespace strata
