#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "strata/datasets.hpp"
#include "strata/localization.hpp"

using namespace strata;

TEST_CASE("magnify basics") {
    PointCloud x(2);
    x.push_back({0.2, 0.1});
    x.push_back({-0.3, 0.4});
    x.push_back({2.0, 0.0});
    double origin[2] = {0, 0};

    // zeta = 1 at the origin keeps exactly the points inside the unit ball.
    LocalSample l = magnify(x, {origin, 2}, 1.0);
    CHECK(l.cloud.size() == 2);

    // Magnifying at a member point with nothing else nearby gives {0}.
    PointCloud single(2);
    single.push_back({0.7, -0.2});
    LocalSample ls = magnify(single, single.point(0), 5.0);
    REQUIRE(ls.cloud.size() == 1);
    CHECK(ls.cloud.point(0)[0] == 0.0);
    CHECK(ls.cloud.point(0)[1] == 0.0);

    CHECK_THROWS_AS(magnify(x, {origin, 2}, 0.0), std::invalid_argument);

    // Boundary points (closed ball) are kept.
    PointCloud boundary(2);
    boundary.push_back({0.5, 0.0});
    LocalSample lb = magnify(boundary, {origin, 2}, 2.0);
    CHECK(lb.cloud.size() == 1);
}

TEST_CASE("magnify invariances") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        auto x = oracle::random_cloud(rng, 12, 2);
        double center[2] = {u(rng) * 0.3, u(rng) * 0.3};
        const double zeta = 1.5 + t * 0.5;

        LocalSample base = magnify(x, {center, 2}, zeta);

        // Scale equivariance: magnify(cX, c x, zeta/c) = magnify(X, x, zeta).
        const double c = 2.5;
        PointCloud xs = scale(x, c);
        double cs[2] = {c * center[0], c * center[1]};
        LocalSample scaled = magnify(xs, {cs, 2}, zeta / c);
        REQUIRE(scaled.cloud.size() == base.cloud.size());
        for (std::size_t i = 0; i < base.cloud.size(); ++i)
            for (int k = 0; k < 2; ++k)
                CHECK(std::abs(scaled.cloud.point(i)[k] - base.cloud.point(i)[k]) <= 1e-12);

        // Translation invariance.
        double shift[2] = {u(rng), u(rng)};
        PointCloud xt = translate(x, {shift, 2});
        double ct[2] = {center[0] + shift[0], center[1] + shift[1]};
        LocalSample moved = magnify(xt, {ct, 2}, zeta);
        REQUIRE(moved.cloud.size() == base.cloud.size());
        for (std::size_t i = 0; i < base.cloud.size(); ++i)
            for (int k = 0; k < 2; ++k)
                CHECK(std::abs(moved.cloud.point(i)[k] - base.cloud.point(i)[k]) <= 1e-12);

        // Norm invariant.
        for (std::size_t i = 0; i < base.cloud.size(); ++i) {
            auto p = base.cloud.point(i);
            CHECK(p[0] * p[0] + p[1] * p[1] <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("grid-index magnify agrees with the direct scan") {
    std::mt19937_64 rng(67);
    auto x = oracle::random_cloud(rng, 60, 2);
    GridIndex index(x, 0.25);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (int t = 0; t < 20; ++t) {
        double center[2] = {u(rng), u(rng)};
        const double zeta = 4.0;
        LocalSample a = magnify(x, {center, 2}, zeta);
        LocalSample b = magnify(x, index, {center, 2}, zeta);
        REQUIRE(a.cloud.size() == b.cloud.size());
        if (!a.cloud.empty()) CHECK(oracle::hausdorff(a.cloud, b.cloud) == 0.0);
    }
}

TEST_CASE("magnification bundle") {
    PointCloud single(2);
    single.push_back({0.4, 0.4});
    BundleSample b1 = magnification_bundle(single, 3.0);
    REQUIRE(b1.fibers.size() == 1);
    CHECK(b1.fibers[0].cloud.size() == 1);

    PointCloud two(2);
    two.push_back({0, 0});
    two.push_back({1, 0});
    BundleSample b2 = magnification_bundle(two, 2.0);  // 1/zeta = 0.5 < 1
    REQUIRE(b2.fibers.size() == 2);
    CHECK(b2.fibers[0].cloud.size() == 1);
    CHECK(b2.fibers[1].cloud.size() == 1);
}

TEST_CASE("tangent cone estimate on the lemniscate converges to the cross") {
    const PointCloud dense = dense_reference("lemniscate", 60000);
    const LocalSample cross = analytic_tangent_cone("lemniscate", std::vector<double>{0.0, 0.0});
    double origin[2] = {0, 0};
    std::vector<double> schedule{3.0, 10.0, 45.0};
    auto mags = tangent_cone_estimate(dense, {origin, 2}, schedule);
    REQUIRE(mags.size() == 3);
    std::vector<double> dist;
    for (const auto& m : mags) dist.push_back(local_distance(m, cross));
    CHECK(dist[0] > dist[1]);
    CHECK(dist[1] > dist[2]);
    CHECK(dist[2] <= 0.1);

    CHECK_THROWS_AS(tangent_cone_estimate(dense, {origin, 2}, std::vector<double>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tangent_cone_estimate(dense, {origin, 2}, std::vector<double>{3.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("magnifications of a circle converge to the tangent line") {
    const PointCloud circle = dense_reference("circle", 20000);
    const std::vector<double> at{1.0, 0.0};
    const LocalSample tangent = analytic_tangent_cone("circle", at);
    std::vector<double> schedule{3.0, 10.0, 45.0};
    auto mags = tangent_cone_estimate(circle, at, schedule);
    std::vector<double> dist;
    for (const auto& m : mags) dist.push_back(local_distance(m, tangent));
    CHECK(dist[0] > dist[1]);
    CHECK(dist[1] > dist[2]);
    CHECK(dist[2] < 0.05);
}

TEST_CASE("constant cloud magnifies to the origin at every scale") {
    PointCloud x(2);
    x.push_back({0.3, -0.6});
    std::vector<double> schedule{1.0, 5.0, 25.0};
    auto mags = tangent_cone_estimate(x, x.point(0), schedule);
    for (const auto& m : mags) {
        REQUIRE(m.cloud.size() == 1);
        CHECK(m.cloud.point(0)[0] == 0.0);
        CHECK(m.cloud.point(0)[1] == 0.0);
    }
}
