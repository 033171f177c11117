#include "strata/phi.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

namespace strata {

void PhiSpec::validate(std::size_t ambient_dim) const {
    if (q < 1) throw std::invalid_argument("PhiSpec: q must be >= 1");
    if (ambient_dim > 0 && static_cast<std::size_t>(q) > ambient_dim)
        throw std::invalid_argument("PhiSpec: q exceeds ambient dimension");
    if (!(grid_spacing > 0 && grid_spacing <= 0.05 + 1e-12))
        throw std::invalid_argument("PhiSpec: grid_spacing must be in (0, 0.05]");
    if (restarts < 1 || max_iter < 1) throw std::invalid_argument("PhiSpec: bad optimizer budget");
    if (!(tol > 0)) throw std::invalid_argument("PhiSpec: tol must be positive");
    if (!(ref_spacing > 0)) throw std::invalid_argument("PhiSpec: ref_spacing must be positive");
}

PhiKind phi_kind_from_string(const std::string& name) {
    if (name == "subspace") return PhiKind::subspace;
    if (name == "subspace_directed") return PhiKind::subspace_directed;
    if (name == "local_homology") return PhiKind::local_homology;
    throw std::invalid_argument("unknown phi kind: " + name);
}

std::string to_string(PhiKind kind) {
    switch (kind) {
        case PhiKind::subspace: return "subspace";
        case PhiKind::subspace_directed: return "subspace_directed";
        case PhiKind::local_homology: return "local_homology";
    }
    return "?";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Orthonormal frame with the top-q principal directions of the second moment
// (about the origin) first.
MatrixXd pca_frame(const PointCloud& cloud, std::size_t dim) {
    MatrixXd m = MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) m(a, b) += p[a] * p[b];
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
    MatrixXd u(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) u.col(c) = es.eigenvectors().col(dim - 1 - c);
    return u;
}

// Graph chart around the frame: V(a) = span of orthonormalized U * [I; A].
MatrixXd basis_from_chart(const MatrixXd& frame, const VectorXd& a, int q) {
    const int n = static_cast<int>(frame.rows());
    MatrixXd lift = MatrixXd::Zero(n, q);
    lift.topLeftCorner(q, q).setIdentity();
    for (int r = 0; r < n - q; ++r)
        for (int c = 0; c < q; ++c) lift(q + r, c) = a(r * q + c);
    MatrixXd raw = frame * lift;
    Eigen::HouseholderQR<MatrixXd> qr(raw);
    return qr.householderQ() * MatrixXd::Identity(n, q);
}

// Deterministic grid on the chart-q-disk, respecting the <= 10^4 point
// budget by coarsening if needed.
std::vector<VectorXd> disk_grid(int q, double spacing) {
    double sp = spacing;
    while (true) {
        const int m = static_cast<int>(std::floor(1.0 / sp));
        double count_estimate = std::pow(2.0 * m + 1.0, q);
        if (count_estimate <= 1e4 || sp > 1.0) break;
        sp *= 1.25;
    }
    const int m = static_cast<int>(std::floor(1.0 / sp));
    std::vector<VectorXd> pts;
    VectorXd g(q);
    std::vector<int> idx(q, -m);
    while (true) {
        double n2 = 0.0;
        for (int k = 0; k < q; ++k) {
            g(k) = idx[k] * sp;
            n2 += g(k) * g(k);
        }
        if (n2 <= 1.0 + 1e-12) pts.push_back(g);
        int k = 0;
        while (k < q && ++idx[k] > m) {
            idx[k] = -m;
            ++k;
        }
        if (k == q) break;
    }
    return pts;
}

// Nelder-Mead minimization, deterministic.
VectorXd nelder_mead(const std::function<double(const VectorXd&)>& f, const VectorXd& x0,
                     double step, int max_iter, double tol, double* best_out) {
    const int n = static_cast<int>(x0.size());
    std::vector<std::pair<double, VectorXd>> simplex;
    simplex.reserve(n + 1);
    simplex.emplace_back(f(x0), x0);
    for (int i = 0; i < n; ++i) {
        VectorXd x = x0;
        x(i) += step;
        simplex.emplace_back(f(x), x);
    }
    auto by_value = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::sort(simplex.begin(), simplex.end(), by_value);

    for (int it = 0; it < max_iter; ++it) {
        if (simplex.back().first - simplex.front().first < tol) break;
        VectorXd centroid = VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) centroid += simplex[i].second;
        centroid /= n;
        const VectorXd& worst = simplex.back().second;

        VectorXd xr = centroid + (centroid - worst);
        double fr = f(xr);
        if (fr < simplex.front().first) {
            VectorXd xe = centroid + 2.0 * (centroid - worst);
            double fe = f(xe);
            simplex.back() = fe < fr ? std::make_pair(fe, xe) : std::make_pair(fr, xr);
        } else if (fr < simplex[n - 1].first) {
            simplex.back() = {fr, xr};
        } else {
            VectorXd xc = centroid + 0.5 * (worst - centroid);
            double fc = f(xc);
            if (fc < simplex.back().first) {
                simplex.back() = {fc, xc};
            } else {
                for (int i = 1; i <= n; ++i) {
                    VectorXd xs = simplex.front().second +
                                  0.5 * (simplex[i].second - simplex.front().second);
                    simplex[i] = {f(xs), xs};
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), by_value);
    }
    if (best_out) *best_out = simplex.front().first;
    return simplex.front().second;
}

// Two-sided truncated Hausdorff distance between a local sample and the
// discretized disk V cap B1 of the plane with orthonormal basis `basis`.
double two_sided_objective(const PointCloud& local, const MatrixXd& basis,
                           const std::vector<VectorXd>& grid, std::size_t dim) {
    const int q = static_cast<int>(basis.cols());
    double worst = 0.0;
    VectorXd x(dim), proj(q);

    // local -> disk: project to V, clamp to the unit disk.
    for (std::size_t i = 0; i < local.size(); ++i) {
        auto p = local.point(i);
        for (std::size_t k = 0; k < dim; ++k) x(k) = p[k];
        proj = basis.transpose() * x;
        const double pn = proj.norm();
        VectorXd closest = basis * (pn > 1.0 ? (proj / pn).eval() : proj);
        worst = std::max(worst, (x - closest).norm());
    }

    // disk -> local: grid points against the packed sample.
    const auto& packed = local.packed();
    VectorXd g(dim);
    const double cutoff = worst * worst;
    double worst2 = cutoff;
    for (const VectorXd& c : grid) {
        g = basis * c;
        const double m = kernels::min_sqdist(g.data(), packed, worst2);
        if (m > worst2) worst2 = m;
    }
    return std::max(worst, std::sqrt(worst2));
}

// sup over the sample of the distance to the plane (projection residual).
double directed_objective(const PointCloud& local, const MatrixXd& basis, std::size_t dim) {
    double worst = 0.0;
    VectorXd x(dim);
    for (std::size_t i = 0; i < local.size(); ++i) {
        auto p = local.point(i);
        for (std::size_t k = 0; k < dim; ++k) x(k) = p[k];
        const VectorXd r = x - basis * (basis.transpose() * x);
        worst = std::max(worst, r.norm());
    }
    return worst;
}

double optimize_over_planes(const PointCloud& local, int q, const PhiSpec& spec,
                            bool two_sided) {
    const std::size_t dim = local.ambient_dim();
    const MatrixXd frame = pca_frame(local, dim);
    const std::vector<VectorXd> grid = two_sided ? disk_grid(q, spec.grid_spacing)
                                                 : std::vector<VectorXd>{};
    const int chart_dim = (static_cast<int>(dim) - q) * q;

    auto objective = [&](const VectorXd& a) {
        const MatrixXd basis = basis_from_chart(frame, a, q);
        return two_sided ? two_sided_objective(local, basis, grid, dim)
                         : directed_objective(local, basis, dim);
    };

    if (chart_dim == 0) return objective(VectorXd());

    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < spec.restarts; ++r) {
        VectorXd x0 = VectorXd::Zero(chart_dim);
        for (int i = 0; i < chart_dim; ++i)
            x0(i) = 0.45 * r * ((i + r) % 2 == 0 ? 1.0 : -1.0);
        double value = 0.0;
        nelder_mead(objective, x0, 0.25, spec.max_iter, spec.tol, &value);
        best = std::min(best, value);
    }
    return best;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

namespace {
// Distances below the floating-point noise of the eigensolver are genuine
// zeros (sample contained in the plane).
double snap_tiny(double d) { return d <= 1e-9 ? 0.0 : d; }
}  // namespace

double phi_subspace(const LocalSample& local, int q, const PhiSpec& spec) {
    if (local.cloud.empty()) return 0.0;
    return clamp01(1.0 - snap_tiny(optimize_over_planes(local.cloud, q, spec, true)));
}

double phi_subspace_directed(const LocalSample& local, int q, const PhiSpec& spec) {
    if (local.cloud.empty()) return 0.0;
    return clamp01(1.0 - snap_tiny(optimize_over_planes(local.cloud, q, spec, false)));
}

namespace {

// Clip deaths to the window end 1/2 so interleaving over [0, 1/2) compares
// bars of the finite window.
Barcode clip_to_window(Barcode bc) {
    for (int d = 0; d <= bc.max_degree(); ++d)
        for (Bar& b : bc.bars_mut(d)) {
            if (!b.finite() || b.death > 0.5) b.death = 0.5;
            if (b.birth > 0.5) b.birth = 0.5;
        }
    return bc;
}

PointCloud subsample_deterministic(const PointCloud& cloud, std::size_t cap) {
    if (cap == 0 || cloud.size() <= cap) return cloud;
    PointCloud out(cloud.ambient_dim());
    const double stride = static_cast<double>(cloud.size()) / static_cast<double>(cap);
    for (std::size_t i = 0; i < cap; ++i)
        out.push_back(cloud.point(static_cast<std::size_t>(i * stride)));
    return out;
}

}  // namespace

Barcode local_homology_barcode(const PointCloud& local_points, int q,
                               std::size_t max_fiber_points) {
    const PointCloud pts = subsample_deterministic(local_points, max_fiber_points);
    const int max_dim = q + 1;
    if (max_dim > 3)
        throw std::invalid_argument("local_homology_barcode: q > 2 not supported");
    auto full = std::make_shared<FilteredComplex>(cech_filtration(pts, max_dim, 0.5));
    auto [sub, incl] = subcomplex_outside_ball(full, 0.5);
    return clip_to_window(relative_barcodes(*full, incl));
}

const ReferenceBarcode& reference_barcode(int q, double spacing) {
    static std::map<std::pair<int, int64_t>, ReferenceBarcode> cache;
    static std::mutex mutex;
    const auto key = std::make_pair(q, static_cast<int64_t>(std::llround(spacing * 1e9)));
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // Grid sample of the unit q-disk.
    PointCloud disk(static_cast<std::size_t>(q));
    const int m = static_cast<int>(std::floor(1.0 / spacing));
    std::vector<int> idx(q, -m);
    std::vector<double> p(q);
    while (true) {
        double n2 = 0.0;
        for (int k = 0; k < q; ++k) {
            p[k] = idx[k] * spacing;
            n2 += p[k] * p[k];
        }
        if (n2 <= 1.0 + 1e-12) disk.push_back(std::span<const double>(p.data(), p.size()));
        int k = 0;
        while (k < q && ++idx[k] > m) {
            idx[k] = -m;
            ++k;
        }
        if (k == q) break;
    }

    ReferenceBarcode ref;
    ref.q = q;
    ref.spacing = spacing;
    ref.barcode = local_homology_barcode(disk, q, 0);
    return cache.emplace(key, std::move(ref)).first->second;
}

double phi_local_homology(const LocalSample& local, const PhiSpec& spec,
                          const ReferenceBarcode& ref) {
    if (ref.q != spec.q)
        throw std::invalid_argument("phi_local_homology: reference q mismatch");
    if (local.cloud.empty()) return 0.0;
    const Barcode bc = local_homology_barcode(local.cloud, spec.q, spec.max_fiber_points);
    double worst = 0.0;
    for (int i = 0; i <= spec.q; ++i)
        worst = std::max(worst, bottleneck_distance(bc, ref.barcode, i));
    return clamp01(1.0 - 2.0 * worst);
}

double phi_value(const LocalSample& local, const PhiSpec& spec) {
    spec.validate(local.cloud.empty() ? 0 : local.cloud.ambient_dim());
    switch (spec.kind) {
        case PhiKind::subspace: return phi_subspace(local, spec.q, spec);
        case PhiKind::subspace_directed: return phi_subspace_directed(local, spec.q, spec);
        case PhiKind::local_homology:
            return phi_local_homology(local, spec, reference_barcode(spec.q, spec.ref_spacing));
    }
    throw std::logic_error("phi_value: bad kind");
}

StronglyStratifiedSample phi_pushforward(const BundleSample& bundle, const PhiSpec& spec) {
    std::vector<double> s;
    s.reserve(bundle.fibers.size());
    for (const LocalSample& fiber : bundle.fibers) s.push_back(phi_value(fiber, spec));
    return StronglyStratifiedSample(bundle.base, std::move(s));
}

StronglyStratifiedSample strong_str(const StratifiedSample& sample) {
    const PointCloud sing = sample.singular_part();
    std::vector<double> s(sample.cloud.size(), 1.0);
    if (!sing.empty()) {
        sing.ensure_packed();
        for (std::size_t i = 0; i < sample.cloud.size(); ++i)
            s[i] = std::min(dist_to_set(sample.cloud.point(i), sing), 1.0);
    }
    return StronglyStratifiedSample(sample.cloud, std::move(s));
}

StratifiedSample forget_str(const StronglyStratifiedSample& sample, double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("forget_str: u out of [0,1]");
    std::vector<uint8_t> mask(sample.cloud.size(), 0);
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = sample.s[i] <= u ? 1 : 0;
    return StratifiedSample(sample.cloud, std::move(mask));
}

StratifiedSample phi_stratify(const PointCloud& x, double zeta, double u, const PhiSpec& spec) {
    if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("phi_stratify: u out of [0,1)");
    return forget_str(phi_pushforward(magnification_bundle(x, zeta), spec), u);
}

std::vector<int> cluster_labels(const PointCloud& x, double radius) {
    const std::size_t n = x.size();
    std::vector<uint32_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<uint32_t>(i);
    std::function<uint32_t(uint32_t)> find = [&](uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    const double r2 = radius * radius;
    const std::size_t dim = x.ambient_dim();
    for (std::size_t i = 0; i < n; ++i) {
        auto a = x.point(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            auto b = x.point(j);
            double d2 = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double d = a[k] - b[k];
                d2 += d * d;
            }
            if (d2 <= r2) {
                uint32_t ra = find(static_cast<uint32_t>(i)), rb = find(static_cast<uint32_t>(j));
                if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
            }
        }
    }
    std::vector<int> label(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const uint32_t r = find(static_cast<uint32_t>(i));
        if (label[r] < 0) label[r] = next++;
        label[i] = label[r];
    }
    return label;
}

std::size_t cluster_count(const PointCloud& x, double radius) {
    if (x.empty()) return 0;
    const auto labels = cluster_labels(x, radius);
    return static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
}

}  // namespace strata
