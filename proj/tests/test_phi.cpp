#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "strata/datasets.hpp"
#include "strata/phi.hpp"

using namespace strata;

namespace {
LocalSample line_sample(double angle, double spacing = 0.05) {
    PointCloud c(2);
    const double dx = std::cos(angle), dy = std::sin(angle);
    for (double t = -1.0; t <= 1.0 + 1e-12; t += spacing) c.push_back({t * dx, t * dy});
    return LocalSample(c);
}

LocalSample cross_sample() {
    return analytic_tangent_cone("lemniscate", std::vector<double>{0.0, 0.0});
}

PhiSpec subspace_spec(int q) {
    PhiSpec s;
    s.kind = PhiKind::subspace;
    s.q = q;
    return s;
}

// Dense scan over all lines through the origin: the independent oracle for
// the optimized q = 1 subspace distances.
double best_line_two_sided(const LocalSample& l) {
    double best = oracle::kInf;
    for (int i = 0; i < 720; ++i) {
        const double a = i * M_PI / 720.0;
        const LocalSample line = line_sample(a, 0.01);
        best = std::min(best, oracle::hausdorff(l.cloud, line.cloud));
    }
    return best;
}

double best_line_directed(const LocalSample& l) {
    double best = oracle::kInf;
    for (int i = 0; i < 720; ++i) {
        const double a = i * M_PI / 720.0;
        const double dx = std::cos(a), dy = std::sin(a);
        double worst = 0.0;
        for (std::size_t j = 0; j < l.cloud.size(); ++j) {
            auto p = l.cloud.point(j);
            worst = std::max(worst, std::abs(-dy * p[0] + dx * p[1]));
        }
        best = std::min(best, worst);
    }
    return best;
}
}  // namespace

TEST_CASE("phi_subspace on plane samples and the cross") {
    // A line sample scores near 1 (discretization error only).
    const LocalSample line = line_sample(0.37);
    CHECK(phi_subspace(line, 1, subspace_spec(1)) >= 0.95);

    // The vertical segment (two-circles tangent cone) also scores near 1.
    const LocalSample segment = analytic_tangent_cone("two_circles", std::vector<double>{0.0, 0.0});
    CHECK(phi_subspace(segment, 1, subspace_spec(1)) >= 0.95);

    // The cross scores about 1 - sqrt(2)/2, checked against the angle scan.
    const LocalSample cross = cross_sample();
    const double got = phi_subspace(cross, 1, subspace_spec(1));
    const double expect = 1.0 - best_line_two_sided(cross);
    CHECK(std::abs(got - expect) <= 0.02);
    CHECK(got == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(0.05));

    // Empty input is maximally singular.
    CHECK(phi_subspace(LocalSample(), 1, subspace_spec(1)) == 0.0);
}

TEST_CASE("phi_subspace_directed") {
    PhiSpec spec;
    spec.kind = PhiKind::subspace_directed;
    spec.q = 1;

    // Contained in a line: exactly 1 (zero residual at the seed already).
    const LocalSample line = line_sample(1.1);
    CHECK(phi_subspace_directed(line, 1, spec) == 1.0);

    // Cross: sup distance to the best line is sqrt(2)/2 (axis line).
    const LocalSample cross = cross_sample();
    const double got = phi_subspace_directed(cross, 1, spec);
    const double expect = 1.0 - best_line_directed(cross);
    CHECK(std::abs(got - expect) <= 0.02);
    CHECK(got == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(0.05));

    // Half-disk in a plane inside R^3 with q = 2: one-sidedness scores 1.
    PointCloud half(3);
    for (double x = -1.0; x <= 1.0; x += 0.1)
        for (double y = 0.0; y <= 1.0; y += 0.1)
            if (x * x + y * y <= 1.0) half.push_back({x, y, 0.0});
    PhiSpec spec3 = spec;
    spec3.q = 2;
    CHECK(phi_subspace_directed(LocalSample(half), 2, spec3) == doctest::Approx(1.0));
}

TEST_CASE("phi rotation invariance within optimizer tolerance") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, M_PI);
    const LocalSample cross = cross_sample();
    const double base = phi_subspace(cross, 1, subspace_spec(1));
    for (int t = 0; t < 3; ++t) {
        const double a = u(rng);
        const double c = std::cos(a), s = std::sin(a);
        PointCloud rotated(2);
        for (std::size_t i = 0; i < cross.cloud.size(); ++i) {
            auto p = cross.cloud.point(i);
            rotated.push_back({c * p[0] - s * p[1], s * p[0] + c * p[1]});
        }
        const double got = phi_subspace(LocalSample(rotated), 1, subspace_spec(1));
        CHECK(std::abs(got - base) <= 0.02);
    }
}

TEST_CASE("phi range on random local samples") {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 10; ++t) {
        LocalSample l(oracle::random_cloud(rng, 3 + t, 2, -0.9, 0.9));
        for (PhiKind kind : {PhiKind::subspace, PhiKind::subspace_directed}) {
            PhiSpec s;
            s.kind = kind;
            s.q = 1;
            const double v = phi_value(l, s);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("reference barcode for q = 1 (interval relative to its ends)") {
    const ReferenceBarcode& ref = reference_barcode(1, 0.05);
    // One relative H1 class spanning the window once the interval is covered.
    std::size_t long_h1 = 0;
    for (const Bar& b : ref.barcode.bars(1))
        if (b.death >= 0.5 - 1e-9 && b.birth <= 0.1) ++long_h1;
    CHECK(long_h1 == 1);
    // No long relative H0 classes.
    for (const Bar& b : ref.barcode.bars(0)) CHECK(b.death - b.birth <= 0.06);
}

TEST_CASE("phi_local_homology identifies the reference and rejects the cross") {
    PhiSpec spec;
    spec.kind = PhiKind::local_homology;
    spec.q = 1;
    const ReferenceBarcode& ref = reference_barcode(1, spec.ref_spacing);

    // The reference sample itself scores 1.
    PointCloud interval(1);
    const int m = static_cast<int>(std::floor(1.0 / spec.ref_spacing));
    for (int i = -m; i <= m; ++i) interval.push_back({i * spec.ref_spacing});
    CHECK(phi_local_homology(LocalSample(interval), spec, ref) == doctest::Approx(1.0));

    // Empty input scores 0.
    CHECK(phi_local_homology(LocalSample(), spec, ref) == 0.0);

    // The cross has three relative H1 classes at small scales (four arms
    // instead of two), forcing a positive bottleneck in degree 1.
    const LocalSample cross = cross_sample();
    const Barcode cross_bc = local_homology_barcode(cross.cloud, 1);
    CHECK(cross_bc.alive_at(1, 0.1) == 3);
    CHECK(ref.barcode.alive_at(1, 0.1) == 1);
    const double phi = phi_local_homology(cross, spec, ref);
    CHECK(phi < 0.9);
    CHECK(phi >= 0.0);
}

TEST_CASE("phi_pushforward") {
    // All fibers on a line: s near 1. Empty fibers: s = 0.
    PointCloud base(2);
    base.push_back({0, 0});
    base.push_back({1, 1});
    std::vector<LocalSample> fibers{line_sample(0.3), LocalSample()};
    PhiSpec spec = subspace_spec(1);
    StronglyStratifiedSample s = phi_pushforward(BundleSample(base, fibers), spec);
    REQUIRE(s.s.size() == 2);
    CHECK(s.s[0] >= 0.95);
    CHECK(s.s[1] == 0.0);
}

TEST_CASE("strong_str") {
    PointCloud c(2);
    c.push_back({0, 0});
    c.push_back({0.5, 0});
    c.push_back({2, 0});
    StratifiedSample sample(c, {1, 0, 0});
    StronglyStratifiedSample strong = strong_str(sample);
    CHECK(strong.s[0] == 0.0);
    CHECK(strong.s[1] == doctest::Approx(0.5));
    CHECK(strong.s[2] == 1.0);  // clamped

    // Empty singular part: s identically 1.
    StratifiedSample regular(c, {0, 0, 0});
    for (double v : strong_str(regular).s) CHECK(v == 1.0);
}

TEST_CASE("strong_str is 2-lipschitz on random instances") {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        auto x = oracle::random_cloud(rng, 10, 2);
        std::vector<uint8_t> mask(10, 0);
        for (int i = 0; i < 10; ++i) mask[i] = rng() % 3 == 0 ? 1 : 0;
        if (std::count(mask.begin(), mask.end(), 1) == 0) mask[0] = 1;
        StratifiedSample s(x, mask);

        const double delta = 0.001 + 0.05 * std::abs(u(rng));
        PointCloud y(2);
        for (std::size_t i = 0; i < x.size(); ++i) {
            auto p = x.point(i);
            y.push_back({p[0] + delta * u(rng), p[1] + delta * u(rng)});
        }
        StratifiedSample s2(y, mask);
        const double d_strat = stratified_distance(s, s2);
        const double d_strong = strong_distance(strong_str(s), strong_str(s2));
        CHECK(d_strong <= 2.0 * d_strat + 1e-9);
    }
}

TEST_CASE("forget_str") {
    PointCloud c(2);
    for (int i = 0; i < 5; ++i) c.push_back({0.2 * i, 0.0});
    StronglyStratifiedSample all_regular(c, {1, 1, 1, 1, 1});
    CHECK(forget_str(all_regular, 0.9).singular_count() == 0);
    CHECK(forget_str(all_regular, 1.0).singular_count() == 5);

    StronglyStratifiedSample mixed(c, {0.0, 0.3, 0.5, 0.7, 1.0});
    CHECK(forget_str(mixed, 0.5).singular_count() == 3);  // closed inequality
    CHECK_THROWS_AS(forget_str(mixed, 1.5), std::invalid_argument);

    // Monotone in u.
    for (double u1 : {0.1, 0.4, 0.6}) {
        auto a = forget_str(mixed, u1);
        auto b = forget_str(mixed, u1 + 0.3);
        for (std::size_t i = 0; i < a.singular_mask.size(); ++i)
            if (a.singular_mask[i]) CHECK(b.singular_mask[i]);
    }
}

TEST_CASE("phi_stratify equals its composition exactly") {
    std::mt19937_64 rng(83);
    auto x = oracle::random_cloud(rng, 25, 2);
    PhiSpec spec = subspace_spec(1);
    const double zeta = 3.0, u = 0.6;
    StratifiedSample direct = phi_stratify(x, zeta, u, spec);
    StratifiedSample composed =
        forget_str(phi_pushforward(magnification_bundle(x, zeta), spec), u);
    CHECK(direct.singular_mask == composed.singular_mask);
    CHECK_THROWS_AS(phi_stratify(x, zeta, 1.0, spec), std::invalid_argument);
}

TEST_CASE("cluster counting") {
    PointCloud c(2);
    c.push_back({0, 0});
    c.push_back({0.05, 0});
    c.push_back({1, 0});
    c.push_back({1.02, 0});
    c.push_back({5, 5});
    CHECK(cluster_count(c, 0.1) == 3);
    CHECK(cluster_count(c, 2.0) == 2);
    CHECK(cluster_count(PointCloud(2), 0.1) == 0);
    const auto labels = cluster_labels(c, 0.1);
    CHECK(labels[0] == labels[1]);
    CHECK(labels[2] == labels[3]);
    CHECK(labels[0] != labels[2]);
}
