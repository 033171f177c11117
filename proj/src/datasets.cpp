#include "strata/datasets.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace strata {

namespace {

constexpr double kPi = std::numbers::pi;

uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::mt19937_64 engine_for(uint64_t seed, const std::string& purpose) {
    return std::mt19937_64(split_seed(seed, purpose));
}

void add_noise(PointCloud& cloud, double sigma, std::mt19937_64& rng) {
    if (sigma <= 0.0) return;
    const std::size_t dim = cloud.ambient_dim();
    std::normal_distribution<double> normal(0.0, sigma);
    std::vector<double> coords = cloud.coords();
    std::vector<double> xi(dim);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        while (true) {
            double n2 = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                xi[k] = normal(rng);
                n2 += xi[k] * xi[k];
            }
            if (n2 <= 9.0 * sigma * sigma) break;  // clip at 3 sigma
        }
        for (std::size_t k = 0; k < dim; ++k) coords[i * dim + k] += xi[k];
    }
    cloud = PointCloud(dim, std::move(coords));
}

}  // namespace

uint64_t split_seed(uint64_t seed, const std::string& purpose) {
    uint64_t h = 1469598103934665603ull;
    for (char c : purpose) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    uint64_t state = seed ^ h;
    return splitmix64(state);
}

ImplicitVariety implicit_catalog(const std::string& kind, double param) {
    ImplicitVariety v;
    if (kind == "lemniscate") {
        const double s = param;
        v.ambient_dim = 2;
        v.f = [s](std::span<const double> p) {
            const double x = p[0], y = p[1];
            return x * x * x * x - x * x + y * y - s;
        };
        v.grad = [](std::span<const double> p, std::span<double> g) {
            const double x = p[0], y = p[1];
            g[0] = 4 * x * x * x - 2 * x;
            g[1] = 2 * y;
        };
        v.box_lo = {-1.2, -0.7};
        v.box_hi = {1.2, 0.7};
    } else if (kind == "two_circles") {
        v.ambient_dim = 2;
        v.f = [](std::span<const double> p) {
            const double x = p[0], y = p[1];
            const double a = (x + 0.5) * (x + 0.5) + y * y - 0.25;
            const double b = (x - 0.5) * (x - 0.5) + y * y - 0.25;
            return a * b;
        };
        v.grad = [](std::span<const double> p, std::span<double> g) {
            const double x = p[0], y = p[1];
            const double a = (x + 0.5) * (x + 0.5) + y * y - 0.25;
            const double b = (x - 0.5) * (x - 0.5) + y * y - 0.25;
            g[0] = 2 * (x + 0.5) * b + a * 2 * (x - 0.5);
            g[1] = 2 * y * b + a * 2 * y;
        };
        v.box_lo = {-1.1, -0.6};
        v.box_hi = {1.1, 0.6};
    } else if (kind == "wedge_circles") {
        // Figure-eight curve (x^2+y^2)^2 = x^2 - y^2 with a transversal
        // self-crossing at the origin.
        v.ambient_dim = 2;
        v.f = [](std::span<const double> p) {
            const double x = p[0], y = p[1];
            const double r2 = x * x + y * y;
            return r2 * r2 - x * x + y * y;
        };
        v.grad = [](std::span<const double> p, std::span<double> g) {
            const double x = p[0], y = p[1];
            const double r2 = x * x + y * y;
            g[0] = 4 * r2 * x - 2 * x;
            g[1] = 4 * r2 * y + 2 * y;
        };
        v.box_lo = {-1.1, -0.5};
        v.box_hi = {1.1, 0.5};
    } else if (kind == "cyclide") {
        v.ambient_dim = 3;
        v.f = [](std::span<const double> p) {
            const double x = p[0], y = p[1], z = p[2];
            const double s = x * x + y * y + z * z + 1.44;
            return s * s - 7.84 * x * x + 1.44 * y * y;
        };
        v.grad = [](std::span<const double> p, std::span<double> g) {
            const double x = p[0], y = p[1], z = p[2];
            const double s = x * x + y * y + z * z + 1.44;
            g[0] = 4 * s * x - 15.68 * x;
            g[1] = 4 * s * y + 2.88 * y;
            g[2] = 4 * s * z;
        };
        v.box_lo = {-2.3, -0.9, -0.9};
        v.box_hi = {2.3, 0.9, 0.9};
    } else if (kind == "circle") {
        v.ambient_dim = 2;
        v.f = [](std::span<const double> p) { return p[0] * p[0] + p[1] * p[1] - 1.0; };
        v.grad = [](std::span<const double> p, std::span<double> g) {
            g[0] = 2 * p[0];
            g[1] = 2 * p[1];
        };
        v.box_lo = {-1.1, -1.1};
        v.box_hi = {1.1, 1.1};
    } else {
        throw std::invalid_argument("implicit_catalog: unknown kind '" + kind + "'");
    }
    return v;
}

namespace {

// Damped Newton steps along the gradient until |f| <= 1e-9.
bool project_to_variety(const ImplicitVariety& v, std::span<double> p) {
    std::vector<double> g(p.size());
    for (int it = 0; it < 200; ++it) {
        const double fv = v.f(p);
        if (std::abs(fv) <= 1e-9) return true;
        v.grad(p, g);
        double g2 = 0.0;
        for (double c : g) g2 += c * c;
        if (g2 < 1e-30) return false;
        const double step = 0.9 * fv / g2;
        for (std::size_t k = 0; k < p.size(); ++k) p[k] -= step * g[k];
    }
    return std::abs(v.f(p)) <= 1e-9;
}

}  // namespace

PointCloud sample_variety(const VarietySpec& spec, std::size_t n) {
    ImplicitVariety v = implicit_catalog(spec.kind, spec.param);
    if (!spec.box_lo.empty()) {
        if (spec.box_lo.size() != v.ambient_dim || spec.box_hi.size() != v.ambient_dim)
            throw std::invalid_argument("sample_variety: box dimension mismatch");
        v.box_lo = spec.box_lo;
        v.box_hi = spec.box_hi;
    }
    for (std::size_t k = 0; k < v.ambient_dim; ++k)
        if (!(v.box_lo[k] < v.box_hi[k]))
            throw std::invalid_argument("sample_variety: empty box");
    if (!(spec.tolerance > 0)) throw std::invalid_argument("sample_variety: tolerance must be > 0");

    auto rng = engine_for(spec.seed, "sample_variety:" + spec.kind);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    PointCloud out(v.ambient_dim);
    std::vector<double> p(v.ambient_dim);
    uint64_t attempts = 0, accepted = 0;
    while (accepted < n) {
        ++attempts;
        if (attempts > 2'000'000 && static_cast<double>(accepted) / attempts < 1e-6)
            throw std::runtime_error(
                "sample_variety: acceptance rate below 1e-6; increase tolerance");
        for (std::size_t k = 0; k < v.ambient_dim; ++k)
            p[k] = v.box_lo[k] + (v.box_hi[k] - v.box_lo[k]) * unit(rng);
        if (std::abs(v.f(p)) > spec.tolerance) continue;
        if (spec.refine && !project_to_variety(v, p)) continue;
        out.push_back(std::span<const double>(p.data(), p.size()));
        ++accepted;
    }
    if (spec.noise_sigma > 0.0) add_noise(out, spec.noise_sigma, rng);
    return out;
}

PointCloud lemniscate_family(double s, std::size_t n, uint64_t seed, double noise_sigma) {
    if (s < -0.25)
        throw std::invalid_argument("lemniscate_family: level set is empty for s < -1/4");
    VarietySpec spec;
    spec.kind = "lemniscate";
    spec.param = s;
    spec.seed = seed;
    spec.noise_sigma = noise_sigma;
    return sample_variety(spec, n);
}

StratifiedSample jacobian_stratification(const PointCloud& x, double s) {
    if (!(s > 0))
        throw std::invalid_argument(
            "jacobian_stratification: s must be positive (use the exact origin stratification "
            "for s = 0)");
    const double limit = 3.0 * std::sqrt(s);
    std::vector<uint8_t> mask(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto p = x.point(i);
        const double gx = 4 * p[0] * p[0] * p[0] - 2 * p[0];
        const double gy = 2 * p[1];
        mask[i] = std::sqrt(gx * gx + gy * gy) <= limit ? 1 : 0;
    }
    return StratifiedSample(x, std::move(mask));
}

namespace {
PointCloud sample_implicit(const std::string& kind, std::size_t n, uint64_t seed,
                           double noise_sigma) {
    VarietySpec spec;
    spec.kind = kind;
    spec.seed = seed;
    spec.noise_sigma = noise_sigma;
    return sample_variety(spec, n);
}
}  // namespace

PointCloud two_circles(std::size_t n, uint64_t seed, double noise_sigma) {
    return sample_implicit("two_circles", n, seed, noise_sigma);
}

PointCloud wedge_circles(std::size_t n, uint64_t seed, double noise_sigma) {
    return sample_implicit("wedge_circles", n, seed, noise_sigma);
}

PointCloud cyclide(std::size_t n, uint64_t seed, double noise_sigma) {
    return sample_implicit("cyclide", n, seed, noise_sigma);
}

PointCloud circle_with_diameter(std::size_t n, uint64_t seed, double noise_sigma) {
    auto rng = engine_for(seed, "circle_with_diameter");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PointCloud out(2);
    const double circle_len = 2.0 * kPi;
    const double total = circle_len + 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        double p[2];
        if (unit(rng) * total < circle_len) {
            const double t = 2.0 * kPi * unit(rng);
            p[0] = std::cos(t);
            p[1] = std::sin(t);
        } else {
            p[0] = 2.0 * unit(rng) - 1.0;
            p[1] = 0.0;
        }
        out.push_back(std::span<const double>(p, 2));
    }
    if (noise_sigma > 0.0) add_noise(out, noise_sigma, rng);
    return out;
}

PointCloud pinched_torus(std::size_t n, uint64_t seed, double noise_sigma) {
    auto rng = engine_for(seed, "pinched_torus");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double big_r = 1.0, tube_r = 0.4;
    PointCloud out(3);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = 2.0 * kPi * unit(rng);
        const double phi = 2.0 * kPi * unit(rng);
        const double r = tube_r * std::sin(theta / 2.0);
        double p[3] = {(big_r + r * std::cos(phi)) * std::cos(theta),
                       (big_r + r * std::cos(phi)) * std::sin(theta), r * std::sin(phi)};
        out.push_back(std::span<const double>(p, 3));
    }
    if (noise_sigma > 0.0) add_noise(out, noise_sigma, rng);
    return out;
}

PointCloud unit_circle(std::size_t n, uint64_t seed, double noise_sigma) {
    auto rng = engine_for(seed, "unit_circle");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PointCloud out(2);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * unit(rng);
        double p[2] = {std::cos(t), std::sin(t)};
        out.push_back(std::span<const double>(p, 2));
    }
    if (noise_sigma > 0.0) add_noise(out, noise_sigma, rng);
    return out;
}

std::optional<PointCloud> ground_truth_singular(const std::string& kind) {
    PointCloud out(kind == "pinched_torus" ? 3 : 2);
    if (kind == "lemniscate" || kind == "two_circles" || kind == "wedge_circles") {
        out.push_back({0.0, 0.0});
    } else if (kind == "circle_with_diameter") {
        out.push_back({-1.0, 0.0});
        out.push_back({1.0, 0.0});
    } else if (kind == "pinched_torus") {
        out.push_back({1.0, 0.0, 0.0});
    } else {
        return std::nullopt;  // cyclide, circle: none asserted
    }
    return out;
}

PointCloud dense_reference(const std::string& kind, std::size_t n, double param) {
    PointCloud out(2);
    if (kind == "lemniscate" && param == 0.0) {
        // Gerono parametrization (sin t, sin t cos t), resampled uniformly by
        // arc length so the spacing is even through the crossing.
        const std::size_t fine = std::max<std::size_t>(16 * n, 100000);
        std::vector<double> cum(fine + 1, 0.0);
        auto gamma = [](double t) {
            return std::pair<double, double>(std::sin(t), std::sin(t) * std::cos(t));
        };
        auto [px, py] = gamma(0.0);
        for (std::size_t i = 1; i <= fine; ++i) {
            const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(fine);
            auto [cx, cy] = gamma(t);
            cum[i] = cum[i - 1] + std::hypot(cx - px, cy - py);
            px = cx;
            py = cy;
        }
        const double total = cum[fine];
        std::size_t j = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double target = total * static_cast<double>(i) / static_cast<double>(n);
            while (j + 1 <= fine && cum[j + 1] < target) ++j;
            const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(fine);
            auto [cx, cy] = gamma(t);
            double p[2] = {cx, cy};
            out.push_back(std::span<const double>(p, 2));
        }
        return out;
    }
    if (kind == "circle") {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
            double p[2] = {std::cos(t), std::sin(t)};
            out.push_back(std::span<const double>(p, 2));
        }
        return out;
    }
    if (kind == "two_circles") {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
            const double cx = (i % 2 == 0) ? -0.5 : 0.5;
            double p[2] = {cx + 0.5 * std::cos(t), 0.5 * std::sin(t)};
            out.push_back(std::span<const double>(p, 2));
        }
        return out;
    }
    if (kind == "wedge_circles") {
        // Polar form r^2 = cos(2 theta) on the two valid sectors.
        for (std::size_t i = 0; i < n; ++i) {
            const double u = static_cast<double>(i) / static_cast<double>(n);
            const double theta = (u < 0.5 ? -kPi / 4 + u * kPi : 3 * kPi / 4 + (u - 0.5) * kPi);
            const double c = std::cos(2 * theta);
            const double r = std::sqrt(std::max(0.0, c));
            double p[2] = {r * std::cos(theta), r * std::sin(theta)};
            out.push_back(std::span<const double>(p, 2));
        }
        return out;
    }
    if (kind == "circle_with_diameter") {
        const double circle_len = 2.0 * kPi;
        const double total = circle_len + 2.0;
        const std::size_t n_circle = static_cast<std::size_t>(n * circle_len / total);
        for (std::size_t i = 0; i < n_circle; ++i) {
            const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_circle);
            double p[2] = {std::cos(t), std::sin(t)};
            out.push_back(std::span<const double>(p, 2));
        }
        for (std::size_t i = 0; i + n_circle < n; ++i) {
            const std::size_t m = n - n_circle;
            double p[2] = {-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(m - 1), 0.0};
            out.push_back(std::span<const double>(p, 2));
        }
        return out;
    }
    if (kind == "lemniscate") {
        // Level sets s != 0: dense seeded projection sample.
        VarietySpec spec;
        spec.kind = "lemniscate";
        spec.param = param;
        spec.seed = 0xd15c0u;
        return sample_variety(spec, n);
    }
    if (kind == "cyclide") {
        VarietySpec spec;
        spec.kind = "cyclide";
        spec.seed = 0xd15c0u;
        return sample_variety(spec, n);
    }
    throw std::invalid_argument("dense_reference: unknown kind '" + kind + "'");
}

LocalSample analytic_tangent_cone(const std::string& space_id, std::span<const double> x) {
    const double grid = 0.01;
    auto is_origin = [&](std::size_t dim) {
        if (x.size() != dim) return false;
        for (double c : x)
            if (std::abs(c) > 1e-9) return false;
        return true;
    };
    PointCloud out(2);
    if ((space_id == "lemniscate" || space_id == "wedge_circles") && is_origin(2)) {
        // Cross {x2 = x1} union {x2 = -x1} inside the unit ball; step chosen
        // so consecutive points are `grid` apart along the branches.
        const double limit = 1.0 / std::sqrt(2.0);
        const double step = grid / std::sqrt(2.0);
        for (double t = -limit; t <= limit + 1e-12; t += step) {
            out.push_back({t, t});
            out.push_back({t, -t});
        }
        return LocalSample(out);
    }
    if (space_id == "two_circles" && is_origin(2)) {
        for (double t = -1.0; t <= 1.0 + 1e-12; t += grid) out.push_back({0.0, t});
        return LocalSample(out);
    }
    if (space_id == "circle" && x.size() == 2 &&
        std::abs(std::sqrt(x[0] * x[0] + x[1] * x[1]) - 1.0) <= 1e-9) {
        // Tangent direction perpendicular to the radius.
        const double dx = -x[1], dy = x[0];
        for (double t = -1.0; t <= 1.0 + 1e-12; t += grid) out.push_back({t * dx, t * dy});
        return LocalSample(out);
    }
    throw std::invalid_argument("analytic_tangent_cone: unknown (space, point) pair");
}

}  // namespace strata
