#include "strata/complexes.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

namespace strata {

namespace {

bool simplex_order(const Simplex& a, const Simplex& b) {
    if (a.filt != b.filt) return a.filt < b.filt;
    if (a.dim != b.dim) return a.dim < b.dim;
    return std::lexicographical_compare(a.v.begin(), a.v.begin() + a.dim + 1, b.v.begin(),
                                        b.v.begin() + b.dim + 1);
}

bool lex_less(const Simplex& a, const Simplex& b) {
    return std::lexicographical_compare(a.v.begin(), a.v.begin() + a.dim + 1, b.v.begin(),
                                        b.v.begin() + b.dim + 1);
}

// Ball through all points of `b` (their circumsphere in the affine hull).
struct Ball {
    double center[16];
    double r2 = -1.0;
    bool ok = false;
};

Ball circumball(const double* pts, const int* idx, int m, std::size_t dim) {
    Ball ball;
    if (m == 0) return ball;
    if (m == 1) {
        std::memcpy(ball.center, pts + idx[0] * dim, dim * sizeof(double));
        ball.r2 = 0.0;
        ball.ok = true;
        return ball;
    }
    // Solve for center = p0 + sum_a lambda_a (p_a - p0) with
    // (p_a - p0) . (c - p0) = |p_a - p0|^2 / 2.
    double g[4][4];
    double rhs[4];
    double e[4][16];
    const double* p0 = pts + idx[0] * dim;
    const int k = m - 1;
    for (int a = 0; a < k; ++a) {
        const double* pa = pts + idx[a + 1] * dim;
        for (std::size_t d = 0; d < dim; ++d) e[a][d] = pa[d] - p0[d];
    }
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            double s = 0.0;
            for (std::size_t d = 0; d < dim; ++d) s += e[a][d] * e[b][d];
            g[a][b] = s;
        }
        rhs[a] = g[a][a] * 0.5;
    }
    // Gaussian elimination with partial pivoting.
    int perm[4] = {0, 1, 2, 3};
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(g[perm[r]][col]) > std::abs(g[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        const double diag = g[perm[col]][col];
        if (std::abs(diag) < 1e-14) return ball;  // affinely dependent support
        for (int r = col + 1; r < k; ++r) {
            const double f = g[perm[r]][col] / diag;
            for (int c = col; c < k; ++c) g[perm[r]][c] -= f * g[perm[col]][c];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    double lam[4];
    for (int col = k - 1; col >= 0; --col) {
        double s = rhs[perm[col]];
        for (int c = col + 1; c < k; ++c) s -= g[perm[col]][c] * lam[c];
        lam[col] = s / g[perm[col]][col];
    }
    double r2 = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        double cd = p0[d];
        double off = 0.0;
        for (int a = 0; a < k; ++a) off += lam[a] * e[a][d];
        cd += off;
        ball.center[d] = cd;
        r2 += off * off;
    }
    ball.r2 = r2;
    ball.ok = true;
    return ball;
}

bool inside(const Ball& b, const double* p, std::size_t dim) {
    double d2 = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        const double t = p[d] - b.center[d];
        d2 += t * t;
    }
    return d2 <= b.r2 * (1.0 + 1e-10) + 1e-24;
}

Ball welzl(const double* pts, std::size_t dim, int* ps, int np, int* bs, int nb) {
    if (np == 0 || nb == 4 + 1) {
        return circumball(pts, bs, nb, dim);
    }
    const int p = ps[np - 1];
    Ball ball = welzl(pts, dim, ps, np - 1, bs, nb);
    if (ball.ok && inside(ball, pts + p * dim, dim)) return ball;
    bs[nb] = p;
    return welzl(pts, dim, ps, np, bs, nb + 1);
}

}  // namespace

double minimal_enclosing_radius(const double* pts, std::size_t count, std::size_t dim) {
    if (count == 0) throw std::invalid_argument("minimal_enclosing_radius: no points");
    if (count > 5) throw std::invalid_argument("minimal_enclosing_radius: at most 5 points");
    if (dim > 16) throw std::invalid_argument("minimal_enclosing_radius: dim too large");
    int ps[5] = {0, 1, 2, 3, 4};
    int bs[5];
    Ball b = welzl(pts, dim, ps, static_cast<int>(count), bs, 0);
    if (!b.ok) {
        // Degenerate input (coincident points); fall back to max pairwise/2.
        double worst = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j) {
                double d2 = 0.0;
                for (std::size_t d = 0; d < dim; ++d) {
                    const double t = pts[i * dim + d] - pts[j * dim + d];
                    d2 += t * t;
                }
                worst = std::max(worst, d2);
            }
        return std::sqrt(worst) / 2.0;
    }
    return std::sqrt(std::max(0.0, b.r2));
}

FilteredComplex::FilteredComplex(std::shared_ptr<const PointCloud> cloud,
                                 std::vector<uint32_t> vertices, std::vector<Simplex> simplices,
                                 int max_dim, double max_radius)
    : cloud_(std::move(cloud)),
      vertices_(std::move(vertices)),
      simplices_(std::move(simplices)),
      max_dim_(max_dim),
      max_radius_(max_radius) {
    std::sort(simplices_.begin(), simplices_.end(), simplex_order);
}

void FilteredComplex::build_lookup() const {
    if (!by_dim_.empty() || simplices_.empty()) return;
    by_dim_.assign(max_dim_ + 1, {});
    for (uint32_t i = 0; i < simplices_.size(); ++i) by_dim_[simplices_[i].dim].push_back(i);
    for (auto& v : by_dim_)
        std::sort(v.begin(), v.end(),
                  [&](uint32_t a, uint32_t b) { return lex_less(simplices_[a], simplices_[b]); });
}

int64_t FilteredComplex::find(std::span<const uint32_t> sorted_verts) const {
    const int d = static_cast<int>(sorted_verts.size()) - 1;
    if (d < 0 || d > max_dim_ || simplices_.empty()) return -1;
    build_lookup();
    Simplex probe;
    probe.dim = static_cast<uint8_t>(d);
    for (int i = 0; i <= d; ++i) probe.v[i] = sorted_verts[i];
    const auto& ids = by_dim_[d];
    auto it = std::lower_bound(ids.begin(), ids.end(), probe, [&](uint32_t a, const Simplex& s) {
        return lex_less(simplices_[a], s);
    });
    if (it == ids.end()) return -1;
    const Simplex& got = simplices_[*it];
    if (std::equal(got.v.begin(), got.v.begin() + d + 1, probe.v.begin())) return *it;
    return -1;
}

void FilteredComplex::validate() const {
    for (const Simplex& s : simplices_) {
        if (s.dim == 0) continue;
        for (int drop = 0; drop <= s.dim; ++drop) {
            uint32_t face[4];
            int k = 0;
            for (int i = 0; i <= s.dim; ++i)
                if (i != drop) face[k++] = s.v[i];
            const int64_t idx = find({face, std::size_t(s.dim)});
            if (idx < 0) throw std::runtime_error("FilteredComplex: missing face");
            if (simplices_[idx].filt > s.filt + 1e-12)
                throw std::runtime_error("FilteredComplex: non-monotone filtration");
        }
    }
}

void ComplexInclusion::validate() const {
    for (const Simplex& s : source->simplices()) {
        uint32_t mapped[4];
        for (int i = 0; i <= s.dim; ++i) {
            const uint32_t m = vertex_map[s.v[i]];
            if (m == kAbsent) throw std::runtime_error("ComplexInclusion: unmapped vertex");
            mapped[i] = m;
        }
        std::sort(mapped, mapped + s.dim + 1);
        const int64_t idx = target->find({mapped, std::size_t(s.dim) + 1});
        if (idx < 0) throw std::runtime_error("ComplexInclusion: image simplex missing");
        if (target->simplices()[idx].filt > s.filt + 1e-12)
            throw std::runtime_error("ComplexInclusion: filtration increases under inclusion");
    }
}

namespace {

using Adjacency = std::vector<std::vector<uint32_t>>;

// Higher-index neighbors under pairwise distance <= 2 * max_radius.
Adjacency neighbor_graph(const PointCloud& x, double max_radius) {
    const std::size_t n = x.size();
    Adjacency adj(n);
    const double lim2 = 4.0 * max_radius * max_radius;
    const auto& packed = x.packed();
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        kernels::sqdist_row(x.point(i).data(), packed, row.data());
        for (std::size_t j = i + 1; j < n; ++j)
            if (row[j] <= lim2) adj[i].push_back(static_cast<uint32_t>(j));
    }
    return adj;
}

template <typename FiltOfSimplex>
FilteredComplex build_clique_complex(const PointCloud& x, int max_dim, double max_radius,
                                     FiltOfSimplex filt_of) {
    if (max_dim < 0) throw std::invalid_argument("filtration: max_dim must be >= 0");
    if (max_dim > 3) throw std::invalid_argument("filtration: max_dim > 3 not supported");
    if (!(max_radius > 0)) throw std::invalid_argument("filtration: max_radius must be positive");

    const std::size_t n = x.size();
    std::vector<Simplex> simplices;
    std::vector<uint32_t> vertices(n);
    for (std::size_t i = 0; i < n; ++i) vertices[i] = static_cast<uint32_t>(i);

    for (std::size_t i = 0; i < n; ++i) {
        Simplex s;
        s.dim = 0;
        s.v[0] = static_cast<uint32_t>(i);
        s.filt = 0.0;
        simplices.push_back(s);
    }
    if (max_dim == 0 || n == 0) {
        auto cloud = std::make_shared<PointCloud>(x);
        return FilteredComplex(cloud, std::move(vertices), std::move(simplices), max_dim,
                               max_radius);
    }

    Adjacency adj = neighbor_graph(x, max_radius);

    auto try_add = [&](std::initializer_list<uint32_t> vs) -> bool {
        Simplex s;
        s.dim = static_cast<uint8_t>(vs.size() - 1);
        int i = 0;
        for (uint32_t v : vs) s.v[i++] = v;
        const double f = filt_of(s);
        if (f > max_radius) return false;
        s.filt = f;
        simplices.push_back(s);
        return true;
    };

    std::vector<uint32_t> common, common2;
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j : adj[i]) {
            if (!try_add({i, j})) continue;
            if (max_dim < 2) continue;
            common.clear();
            std::set_intersection(adj[i].begin(), adj[i].end(), adj[j].begin(), adj[j].end(),
                                  std::back_inserter(common));
            for (uint32_t k : common) {
                if (!try_add({i, j, k})) continue;
                if (max_dim < 3) continue;
                common2.clear();
                std::set_intersection(common.begin(), common.end(), adj[k].begin(), adj[k].end(),
                                      std::back_inserter(common2));
                for (uint32_t l : common2) {
                    if (l <= k) continue;
                    try_add({i, j, k, l});
                }
            }
        }
    }

    auto cloud = std::make_shared<PointCloud>(x);
    return FilteredComplex(cloud, std::move(vertices), std::move(simplices), max_dim, max_radius);
}

}  // namespace

FilteredComplex cech_filtration(const PointCloud& x, int max_dim, double max_radius) {
    const std::size_t dim = x.ambient_dim();
    std::vector<double> buf;
    return build_clique_complex(x, max_dim, max_radius, [&](const Simplex& s) {
        buf.resize((s.dim + 1) * dim);
        for (int i = 0; i <= s.dim; ++i) {
            auto p = x.point(s.v[i]);
            std::copy(p.begin(), p.end(), buf.begin() + i * dim);
        }
        return minimal_enclosing_radius(buf.data(), s.dim + 1, dim);
    });
}

FilteredComplex rips_filtration(const PointCloud& x, int max_dim, double max_radius) {
    const std::size_t dim = x.ambient_dim();
    return build_clique_complex(x, max_dim, max_radius, [&](const Simplex& s) {
        double worst = 0.0;
        for (int i = 0; i <= s.dim; ++i)
            for (int j = i + 1; j <= s.dim; ++j) {
                auto a = x.point(s.v[i]);
                auto b = x.point(s.v[j]);
                double d2 = 0.0;
                for (std::size_t d = 0; d < dim; ++d) {
                    const double t = a[d] - b[d];
                    d2 += t * t;
                }
                worst = std::max(worst, d2);
            }
        return std::sqrt(worst) / 2.0;
    });
}

std::pair<std::shared_ptr<FilteredComplex>, ComplexInclusion> subcomplex_outside_ball(
    std::shared_ptr<const FilteredComplex> f, double r) {
    if (r < 0) throw std::invalid_argument("subcomplex_outside_ball: r must be >= 0");
    const PointCloud& x = f->cloud();
    std::vector<uint8_t> keep(x.size(), 0);
    std::vector<uint32_t> vertices;
    for (uint32_t v : f->vertices()) {
        auto p = x.point(v);
        double n2 = 0.0;
        for (double c : p) n2 += c * c;
        if (n2 >= r * r) {
            keep[v] = 1;
            vertices.push_back(v);
        }
    }
    std::vector<Simplex> simplices;
    for (const Simplex& s : f->simplices()) {
        bool all = true;
        for (int i = 0; i <= s.dim; ++i)
            if (!keep[s.v[i]]) {
                all = false;
                break;
            }
        if (all) simplices.push_back(s);
    }
    auto sub = std::make_shared<FilteredComplex>(f->cloud_ptr(), std::move(vertices),
                                                 std::move(simplices), f->max_dim(),
                                                 f->max_radius());
    ComplexInclusion inc;
    inc.source = sub;
    inc.target = std::move(f);
    inc.vertex_map.assign(x.size(), ComplexInclusion::kAbsent);
    for (uint32_t v : sub->vertices()) inc.vertex_map[v] = v;
    return {sub, inc};
}

ComplexInclusion inclusion_of_subsample(std::shared_ptr<const FilteredComplex> f_sub,
                                        std::shared_ptr<const FilteredComplex> f_sup) {
    const PointCloud& sub = f_sub->cloud();
    const PointCloud& sup = f_sup->cloud();
    if (sub.ambient_dim() != sup.ambient_dim() && !sub.empty())
        throw std::invalid_argument("inclusion_of_subsample: dimension mismatch");

    // Multiset-aware coordinate matching: the i-th duplicate maps to the
    // i-th duplicate.
    std::map<std::vector<double>, std::vector<uint32_t>> where;
    for (std::size_t i = 0; i < sup.size(); ++i) {
        auto p = sup.point(i);
        where[std::vector<double>(p.begin(), p.end())].push_back(static_cast<uint32_t>(i));
    }
    ComplexInclusion inc;
    inc.source = f_sub;
    inc.target = std::move(f_sup);
    inc.vertex_map.assign(sub.size(), ComplexInclusion::kAbsent);
    std::map<std::vector<double>, std::size_t> used;
    for (std::size_t i = 0; i < sub.size(); ++i) {
        auto p = sub.point(i);
        std::vector<double> key(p.begin(), p.end());
        auto it = where.find(key);
        std::size_t& u = used[key];
        if (it == where.end() || u >= it->second.size())
            throw std::invalid_argument("inclusion_of_subsample: source cloud is not a subset");
        inc.vertex_map[i] = it->second[u++];
    }
    inc.validate();
    return inc;
}

void export_complex(const FilteredComplex& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write complex file: " + path);
    out.precision(17);
    for (const Simplex& s : f.simplices()) {
        for (int i = 0; i <= s.dim; ++i) {
            if (i) out << ' ';
            out << s.v[i];
        }
        out << ';' << s.filt << '\n';
    }
}

}  // namespace strata
