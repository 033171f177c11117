#include "strata/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace strata {

PointCloud::PointCloud(std::size_t ambient_dim, std::vector<double> coords)
    : dim_(ambient_dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw std::invalid_argument("PointCloud: ambient_dim must be positive");
    if (coords_.size() % dim_ != 0)
        throw std::invalid_argument("PointCloud: coordinate count not a multiple of ambient_dim");
}

void PointCloud::push_back(std::span<const double> p) {
    if (dim_ == 0) dim_ = p.size();
    if (p.size() != dim_) throw std::invalid_argument("PointCloud: point has wrong dimension");
    coords_.insert(coords_.end(), p.begin(), p.end());
    packed_valid_ = false;
}

void PointCloud::push_back(std::initializer_list<double> p) {
    push_back(std::span<const double>(p.begin(), p.size()));
}

const kernels::PackedPoints& PointCloud::packed() const {
    if (!packed_valid_) {
        packed_ = kernels::PackedPoints::from_rows(coords_.data(), size(), dim_);
        packed_valid_ = true;
    }
    return packed_;
}

PointCloud translate(const PointCloud& x, std::span<const double> t) {
    if (t.size() != x.ambient_dim())
        throw std::invalid_argument("translate: dimension mismatch");
    std::vector<double> c = x.coords();
    const std::size_t dim = x.ambient_dim();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += t[i % dim];
    return PointCloud(dim, std::move(c));
}

PointCloud scale(const PointCloud& x, double c) {
    std::vector<double> v = x.coords();
    for (double& a : v) a *= c;
    return PointCloud(x.ambient_dim(), std::move(v));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

CsvCloud read_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV file: " + path);
    auto header = split_csv_line(line);

    std::size_t dim = 0;
    int stratum_col = -1, s_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string& h = header[i];
        if (h == "stratum") {
            stratum_col = static_cast<int>(i);
        } else if (h == "s") {
            s_col = static_cast<int>(i);
        } else if (h.size() >= 2 && h[0] == 'x') {
            ++dim;
        } else {
            throw std::runtime_error("unrecognized CSV column '" + h + "' in " + path);
        }
    }
    if (dim == 0) throw std::runtime_error("CSV has no coordinate columns: " + path);

    CsvCloud out;
    out.cloud = PointCloud(dim);
    out.has_stratum = stratum_col >= 0;
    out.has_s = s_col >= 0;
    std::vector<double> p(dim);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != header.size())
            throw std::runtime_error("CSV row " + std::to_string(lineno) + " has wrong field count");
        std::size_t k = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (static_cast<int>(i) == stratum_col) {
                if (f[i] != "p" && f[i] != "q")
                    throw std::runtime_error("CSV row " + std::to_string(lineno) +
                                             ": stratum must be 'p' or 'q'");
                out.singular.push_back(f[i] == "p" ? 1 : 0);
            } else if (static_cast<int>(i) == s_col) {
                double v = std::stod(f[i]);
                if (v < 0.0 || v > 1.0)
                    throw std::runtime_error("CSV row " + std::to_string(lineno) +
                                             ": s out of [0,1]");
                out.s.push_back(v);
            } else {
                p[k++] = std::stod(f[i]);
            }
        }
        out.cloud.push_back(std::span<const double>(p.data(), dim));
    }
    return out;
}

void write_cloud_csv(const std::string& path, const PointCloud& cloud,
                     const std::vector<uint8_t>* singular, const std::vector<double>* s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write CSV file: " + path);
    out.precision(17);
    const std::size_t dim = cloud.ambient_dim();
    for (std::size_t k = 0; k < dim; ++k) {
        if (k) out << ',';
        out << 'x' << k;
    }
    if (singular) out << ",stratum";
    if (s) out << ",s";
    out << '\n';
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t k = 0; k < dim; ++k) {
            if (k) out << ',';
            out << p[k];
        }
        if (singular) out << ',' << ((*singular)[i] ? 'p' : 'q');
        if (s) out << ',' << (*s)[i];
        out << '\n';
    }
}

}  // namespace strata
