#include "strata/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace strata {

const std::vector<Bar> Barcode::kEmpty{};

const std::vector<Bar>& Barcode::bars(int degree) const {
    if (degree < 0 || degree >= static_cast<int>(by_degree_.size())) return kEmpty;
    return by_degree_[degree];
}

std::vector<Bar>& Barcode::bars_mut(int degree) {
    if (degree >= static_cast<int>(by_degree_.size())) by_degree_.resize(degree + 1);
    return by_degree_[degree];
}

void Barcode::add(int degree, Bar bar) { bars_mut(degree).push_back(bar); }

void Barcode::sort() {
    for (auto& bars : by_degree_)
        std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
            if (a.birth != b.birth) return a.birth < b.birth;
            return a.death < b.death;
        });
}

std::size_t Barcode::alive_at(int degree, double alpha) const {
    std::size_t n = 0;
    for (const Bar& b : bars(degree))
        if (b.birth <= alpha && alpha < b.death) ++n;
    return n;
}

bool Barcode::empty() const {
    for (const auto& bars : by_degree_)
        if (!bars.empty()) return false;
    return true;
}

H0Map compose(const H0Map& g, const H0Map& f) {
    if (f.rows != g.cols) throw std::invalid_argument("compose: shape mismatch");
    H0Map out;
    out.alpha = f.alpha;
    out.rows = g.rows;
    out.cols = f.cols;
    out.m.assign(out.rows * out.cols, 0);
    for (std::size_t r = 0; r < g.rows; ++r)
        for (std::size_t k = 0; k < g.cols; ++k)
            if (g.at(r, k))
                for (std::size_t c = 0; c < f.cols; ++c) out.m[r * out.cols + c] ^= f.at(k, c);
    return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<uint32_t>(i);
    }
    uint32_t find(uint32_t x) {
        uint32_t root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            uint32_t next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }
};

// Sorted-row F2 column; pivot is the last (largest) row.
using Column = std::vector<uint32_t>;

void xor_into(Column& dst, const Column& src, Column& scratch) {
    scratch.clear();
    std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(),
                                  std::back_inserter(scratch));
    dst.swap(scratch);
}

// Reduces the columns of dimension `col_dim` over rows of dimension
// col_dim-1. `row_alive[s]` says whether global simplex id s is a row of the
// (possibly quotient) complex; columns are the alive simplices of col_dim.
// Emits pairs (row_id, col_id) and appends zero columns (positive simplices)
// to `positive`.
void reduce_dimension(const FilteredComplex& f, int col_dim,
                      const std::vector<uint8_t>& alive,
                      std::vector<std::pair<uint32_t, uint32_t>>& pairs,
                      std::vector<uint32_t>& positive) {
    const auto& simplices = f.simplices();
    std::vector<int64_t> pivot_owner(simplices.size(), -1);
    std::vector<Column> stored(simplices.size());
    Column col, scratch;

    for (uint32_t sid = 0; sid < simplices.size(); ++sid) {
        const Simplex& s = simplices[sid];
        if (s.dim != col_dim || !alive[sid]) continue;
        col.clear();
        uint32_t face[4];
        for (int drop = 0; drop <= s.dim; ++drop) {
            int k = 0;
            for (int i = 0; i <= s.dim; ++i)
                if (i != drop) face[k++] = s.v[i];
            const int64_t fid = f.find({face, std::size_t(s.dim)});
            if (fid < 0) throw std::runtime_error("reduce: missing face");
            if (alive[fid]) col.push_back(static_cast<uint32_t>(fid));
        }
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            const uint32_t piv = col.back();
            const int64_t owner = pivot_owner[piv];
            if (owner < 0) break;
            xor_into(col, stored[owner], scratch);
        }
        if (col.empty()) {
            positive.push_back(sid);
        } else {
            const uint32_t piv = col.back();
            pivot_owner[piv] = sid;
            stored[sid] = col;
            pairs.emplace_back(piv, sid);
        }
    }
}

Barcode reduce_impl(const FilteredComplex& f, const std::vector<uint8_t>& alive) {
    const auto& simplices = f.simplices();
    Barcode bc(std::max(0, f.max_dim()));

    // Degree 0. In the absolute case, union-find with the elder rule over
    // edges in filtration order. In the quotient case, components touching
    // the subcomplex die at the touching edge, so we add a virtual grounded
    // node; this is valid because the subcomplexes used here are full.
    const std::size_t n_cloud = f.cloud().size();
    UnionFind uf(n_cloud + 1);
    const uint32_t ground = static_cast<uint32_t>(n_cloud);
    std::vector<double> comp_birth(n_cloud + 1, kInf);
    std::vector<uint8_t> vertex_alive(n_cloud, 0);
    comp_birth[ground] = -kInf;

    std::vector<uint8_t> edge_positive(simplices.size(), 0);

    for (uint32_t sid = 0; sid < simplices.size(); ++sid) {
        const Simplex& s = simplices[sid];
        if (s.dim == 0) {
            const uint32_t v = s.v[0];
            if (alive[sid]) {
                vertex_alive[v] = 1;
                comp_birth[v] = s.filt;
            } else {
                // Subcomplex vertex: belongs to the grounded blob.
                uint32_t rv = uf.find(v);
                uint32_t rg = uf.find(ground);
                if (rv != rg) uf.parent[rv] = rg;
            }
        } else if (s.dim == 1) {
            uint32_t a = uf.find(s.v[0]);
            uint32_t b = uf.find(s.v[1]);
            if (!alive[sid]) {
                // Subcomplex edge: merge inside the ground blob (no bar).
                if (a != b) {
                    uint32_t rg = uf.find(ground);
                    uf.parent[a] = rg;
                    uf.parent[uf.find(b)] = rg;
                }
                continue;
            }
            if (a == b) {
                edge_positive[sid] = 1;
                continue;
            }
            // Elder rule: younger component dies.
            if (comp_birth[a] < comp_birth[b] ||
                (comp_birth[a] == comp_birth[b] && a < b))
                std::swap(a, b);
            if (s.filt > comp_birth[a]) bc.add(0, {comp_birth[a], s.filt});
            uf.parent[a] = b;
        }
    }
    for (uint32_t v = 0; v < n_cloud; ++v)
        if (vertex_alive[v] && uf.find(v) == v) bc.add(0, {comp_birth[v], kInf});

    // Degrees >= 1 via column reduction, one coface dimension at a time.
    std::vector<uint8_t> simplex_positive(simplices.size(), 0);
    for (uint32_t sid = 0; sid < simplices.size(); ++sid)
        if (simplices[sid].dim == 1 && edge_positive[sid]) simplex_positive[sid] = 1;

    for (int col_dim = 2; col_dim <= f.max_dim(); ++col_dim) {
        std::vector<std::pair<uint32_t, uint32_t>> pairs;
        std::vector<uint32_t> positive;
        reduce_dimension(f, col_dim, alive, pairs, positive);
        for (auto [row, col] : pairs) {
            simplex_positive[row] = 0;  // paired: the class dies
            const double birth = simplices[row].filt;
            const double death = simplices[col].filt;
            if (death > birth) bc.add(col_dim - 1, {birth, death});
        }
        for (uint32_t sid : positive) simplex_positive[sid] = 1;
    }
    // Unpaired positive simplices are infinite bars.
    for (uint32_t sid = 0; sid < simplices.size(); ++sid)
        if (simplex_positive[sid])
            bc.add(simplices[sid].dim, {simplices[sid].filt, kInf});

    bc.sort();
    return bc;
}

}  // namespace

Barcode reduce_barcodes(const FilteredComplex& f) {
    std::vector<uint8_t> alive(f.simplices().size(), 1);
    return reduce_impl(f, alive);
}

Barcode relative_barcodes(const FilteredComplex& f, const ComplexInclusion& a) {
    if (a.target.get() != &f)
        throw std::invalid_argument("relative_barcodes: inclusion does not target this complex");
    const FilteredComplex& sub = *a.source;
    // The subcomplex must sit inside f with identical vertices and values.
    std::vector<uint8_t> alive(f.simplices().size(), 1);
    for (const Simplex& s : sub.simplices()) {
        uint32_t mapped[4];
        for (int i = 0; i <= s.dim; ++i) {
            const uint32_t m = a.vertex_map[s.v[i]];
            if (m == ComplexInclusion::kAbsent)
                throw std::invalid_argument("relative_barcodes: unmapped subcomplex vertex");
            mapped[i] = m;
        }
        std::sort(mapped, mapped + s.dim + 1);
        const int64_t idx = f.find({mapped, std::size_t(s.dim) + 1});
        if (idx < 0) throw std::invalid_argument("relative_barcodes: A is not a subcomplex of F");
        if (std::abs(f.simplices()[idx].filt - s.filt) > 1e-12)
            throw std::invalid_argument("relative_barcodes: filtration values differ on A");
        alive[idx] = 0;
    }
    return reduce_impl(f, alive);
}

namespace {

// Hopcroft-Karp maximum bipartite matching.
struct HopcroftKarp {
    std::vector<std::vector<int>> adj;  // left -> rights
    int n_left = 0, n_right = 0;
    std::vector<int> match_l, match_r, dist;

    bool bfs() {
        std::queue<int> q;
        dist.assign(n_left, -1);
        for (int u = 0; u < n_left; ++u)
            if (match_l[u] < 0) {
                dist[u] = 0;
                q.push(u);
            }
        bool found = false;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                int w = match_r[v];
                if (w < 0)
                    found = true;
                else if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }
    bool dfs(int u) {
        for (int v : adj[u]) {
            int w = match_r[v];
            if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = -1;
        return false;
    }
    int run() {
        match_l.assign(n_left, -1);
        match_r.assign(n_right, -1);
        int size = 0;
        while (bfs())
            for (int u = 0; u < n_left; ++u)
                if (match_l[u] < 0 && dfs(u)) ++size;
        return size;
    }
};

double pair_cost(const Bar& a, const Bar& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Can the bars of `hard` (all with half-length > lambda) be injectively
// matched into `others` at cost <= lambda?  (Mendelsohn-Dulmage: checking
// each side separately suffices for joint feasibility.)
bool side_feasible(const std::vector<Bar>& hard, const std::vector<Bar>& others, double lambda) {
    HopcroftKarp hk;
    hk.n_left = static_cast<int>(hard.size());
    hk.n_right = static_cast<int>(others.size());
    hk.adj.assign(hk.n_left, {});
    for (int i = 0; i < hk.n_left; ++i)
        for (int j = 0; j < hk.n_right; ++j)
            if (pair_cost(hard[i], others[j]) <= lambda) hk.adj[i].push_back(j);
    return hk.run() == hk.n_left;
}

bool feasible(const std::vector<Bar>& a, const std::vector<Bar>& b, double lambda) {
    std::vector<Bar> hard_a, hard_b;
    for (const Bar& bar : a)
        if (bar.half_length() > lambda) hard_a.push_back(bar);
    for (const Bar& bar : b)
        if (bar.half_length() > lambda) hard_b.push_back(bar);
    return side_feasible(hard_a, b, lambda) && side_feasible(hard_b, a, lambda);
}

}  // namespace

double bottleneck_distance(const Barcode& b1, const Barcode& b2, int degree) {
    std::vector<Bar> fin1, fin2;
    std::vector<double> inf1, inf2;
    for (const Bar& b : b1.bars(degree))
        (b.finite() ? (void)fin1.push_back(b) : (void)inf1.push_back(b.birth));
    for (const Bar& b : b2.bars(degree))
        (b.finite() ? (void)fin2.push_back(b) : (void)inf2.push_back(b.birth));

    if (inf1.size() != inf2.size()) return kInf;
    double inf_part = 0.0;
    std::sort(inf1.begin(), inf1.end());
    std::sort(inf2.begin(), inf2.end());
    for (std::size_t i = 0; i < inf1.size(); ++i)
        inf_part = std::max(inf_part, std::abs(inf1[i] - inf2[i]));

    if (fin1.empty() && fin2.empty()) return inf_part;

    std::vector<double> cand{0.0};
    for (const Bar& x : fin1) cand.push_back(x.half_length());
    for (const Bar& x : fin2) cand.push_back(x.half_length());
    for (const Bar& x : fin1)
        for (const Bar& y : fin2) cand.push_back(pair_cost(x, y));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::size_t lo = 0, hi = cand.size() - 1;
    if (!feasible(fin1, fin2, cand[hi])) return kInf;  // cannot happen: max cost always works
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (feasible(fin1, fin2, cand[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return std::max(inf_part, cand[lo]);
}

H0Map h0_induced_map(const ComplexInclusion& incl, double alpha) {
    const FilteredComplex& src = *incl.source;
    const FilteredComplex& tgt = *incl.target;
    if (alpha > src.max_radius() + 1e-12 || alpha > tgt.max_radius() + 1e-12)
        throw std::invalid_argument("h0_induced_map: alpha exceeds a radius cap");

    auto components = [alpha](const FilteredComplex& f) {
        UnionFind uf(f.cloud().size());
        for (const Simplex& s : f.simplices())
            if (s.dim == 1 && s.filt <= alpha) {
                uint32_t a = uf.find(s.v[0]), b = uf.find(s.v[1]);
                if (a != b) uf.parent[std::max(a, b)] = std::min(a, b);
            }
        // Canonical component ids ordered by smallest member vertex.
        std::vector<int> comp_of(f.cloud().size(), -1);
        std::vector<uint32_t> reps;
        for (uint32_t v : f.vertices()) {
            uint32_t r = uf.find(v);
            if (comp_of[r] < 0) {
                comp_of[r] = static_cast<int>(reps.size());
                reps.push_back(r);
            }
            comp_of[v] = comp_of[r];
        }
        return std::make_pair(comp_of, reps.size());
    };

    auto [src_comp, n_src] = components(src);
    auto [tgt_comp, n_tgt] = components(tgt);

    H0Map map;
    map.alpha = alpha;
    map.rows = n_tgt;
    map.cols = n_src;
    map.m.assign(map.rows * map.cols, 0);
    for (uint32_t v : src.vertices()) {
        const uint32_t w = incl.vertex_map[v];
        if (w == ComplexInclusion::kAbsent)
            throw std::invalid_argument("h0_induced_map: unmapped vertex");
        map.m[static_cast<std::size_t>(tgt_comp[w]) * map.cols + src_comp[v]] = 1;
    }
    return map;
}

}  // namespace strata
