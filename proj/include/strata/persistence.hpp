#pragma once

#include <limits>
#include <vector>

#include "strata/complexes.hpp"

namespace strata {

struct Bar {
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();

    bool finite() const { return death != std::numeric_limits<double>::infinity(); }
    double half_length() const { return finite() ? (death - birth) / 2.0 : death; }
};

// Finite multiset of intervals per homology degree (F2 coefficients).
class Barcode {
  public:
    Barcode() = default;
    explicit Barcode(int max_degree) : by_degree_(max_degree + 1) {}

    int max_degree() const { return static_cast<int>(by_degree_.size()) - 1; }
    const std::vector<Bar>& bars(int degree) const;
    std::vector<Bar>& bars_mut(int degree);
    void add(int degree, Bar bar);
    void sort();  // by (birth, death) within each degree

    // Number of bars alive at alpha: birth <= alpha < death.
    std::size_t alive_at(int degree, double alpha) const;
    bool empty() const;

  private:
    std::vector<std::vector<Bar>> by_degree_;
    static const std::vector<Bar> kEmpty;
};

// Degree-0 structure map at a fixed scale: columns are components of the
// source at that scale, rows components of the target; entries over F2.
struct H0Map {
    double alpha = 0.0;
    std::size_t rows = 0, cols = 0;
    std::vector<uint8_t> m;  // row-major rows x cols

    uint8_t at(std::size_t r, std::size_t c) const { return m[r * cols + c]; }
};

H0Map compose(const H0Map& g, const H0Map& f);  // g after f, over F2

Barcode reduce_barcodes(const FilteredComplex& f);

// Persistence of the quotient by the subcomplex a.source (a.target must be f).
Barcode relative_barcodes(const FilteredComplex& f, const ComplexInclusion& a);

// Exact bottleneck distance between the degree-d parts. Barcodes with
// different numbers of infinite bars are infinitely far apart.
double bottleneck_distance(const Barcode& b1, const Barcode& b2, int degree);

H0Map h0_induced_map(const ComplexInclusion& incl, double alpha);

}  // namespace strata
