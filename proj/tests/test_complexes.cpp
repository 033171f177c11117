#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "strata/complexes.hpp"

using namespace strata;

namespace {
PointCloud cloud2(std::initializer_list<std::pair<double, double>> pts) {
    PointCloud c(2);
    for (auto [x, y] : pts) c.push_back({x, y});
    return c;
}

std::size_t count_dim(const FilteredComplex& f, int d) {
    std::size_t n = 0;
    for (const Simplex& s : f.simplices())
        if (s.dim == d) ++n;
    return n;
}

double filt_of(const FilteredComplex& f, std::initializer_list<uint32_t> verts) {
    std::vector<uint32_t> v(verts);
    std::sort(v.begin(), v.end());
    const int64_t idx = f.find({v.data(), v.size()});
    REQUIRE(idx >= 0);
    return f.simplices()[idx].filt;
}
}  // namespace

TEST_CASE("cech filtration on the equilateral triangle") {
    const double h = std::sqrt(3.0) / 2.0;
    PointCloud c = cloud2({{0, 0}, {1, 0}, {0.5, h}});
    FilteredComplex f = cech_filtration(c, 2, 1.0);
    f.validate();
    CHECK(count_dim(f, 0) == 3);
    CHECK(count_dim(f, 1) == 3);
    CHECK(count_dim(f, 2) == 1);
    CHECK(filt_of(f, {0, 1}) == doctest::Approx(0.5));
    // Circumradius of the unit equilateral triangle.
    CHECK(filt_of(f, {0, 1, 2}) == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("cech filtration on the inscribed square") {
    PointCloud c = cloud2({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    FilteredComplex f = cech_filtration(c, 2, 1.01);
    CHECK(count_dim(f, 1) >= 4);
    // Side edges at sqrt(2)/2, triangles at 1 (right triangles on a diameter).
    CHECK(filt_of(f, {0, 1}) == doctest::Approx(std::sqrt(2.0) / 2.0));
    std::size_t at_one = 0;
    for (const Simplex& s : f.simplices())
        if (s.dim == 2 && std::abs(s.filt - 1.0) < 1e-9) ++at_one;
    CHECK(at_one == 4);
}

TEST_CASE("cech trivial cases") {
    PointCloud single(2);
    single.push_back({0.3, 0.4});
    FilteredComplex f = cech_filtration(single, 2, 0.5);
    CHECK(f.simplices().size() == 1);
    CHECK(f.simplices()[0].filt == 0.0);

    PointCloud empty(2);
    CHECK(cech_filtration(empty, 2, 0.5).simplices().empty());
    CHECK_THROWS_AS(cech_filtration(single, -1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(cech_filtration(single, 2, 0.0), std::invalid_argument);
}

TEST_CASE("rips filtration values") {
    PointCloud two = cloud2({{0, 0}, {2, 0}});
    FilteredComplex f = rips_filtration(two, 1, 1.5);
    CHECK(filt_of(f, {0, 1}) == doctest::Approx(1.0));

    const double h = std::sqrt(3.0) / 2.0;
    PointCloud tri = cloud2({{0, 0}, {1, 0}, {0.5, h}});
    FilteredComplex fr = rips_filtration(tri, 2, 1.0);
    CHECK(filt_of(fr, {0, 1, 2}) == doctest::Approx(0.5));  // diameter/2, not 1/sqrt(3)

    PointCloud empty(2);
    CHECK(rips_filtration(empty, 2, 1.0).simplices().empty());
}

TEST_CASE("cech and rips agree up to dimension one, Jung bound in dimension two") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        auto c = oracle::random_cloud(rng, 6, 2);
        FilteredComplex fc = cech_filtration(c, 2, 2.5);
        FilteredComplex fr = rips_filtration(c, 2, 2.5);
        REQUIRE(fc.simplices().size() == fr.simplices().size());
        for (const Simplex& s : fc.simplices()) {
            const int64_t idx = fr.find(s.verts());
            REQUIRE(idx >= 0);
            const double rips = fr.simplices()[idx].filt;
            if (s.dim <= 1) {
                CHECK(s.filt == doctest::Approx(rips).epsilon(1e-12));
            } else {
                // Jung: cech <= rips * sqrt(2d/(d+1)), and rips <= cech.
                CHECK(s.filt <= rips * std::sqrt(2.0 * s.dim / (s.dim + 1.0)) + 1e-12);
                CHECK(rips <= s.filt + 1e-12);
            }
        }
    }
}

TEST_CASE("minimal enclosing ball matches subset-enumeration oracle") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 300; ++t) {
        const std::size_t dim = 2 + t % 3;  // 2..4
        const std::size_t count = 2 + t % 4;  // 2..5
        std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
        std::vector<double> flat;
        for (auto& p : pts)
            for (auto& v : p) {
                v = u(rng);
                flat.push_back(v);
            }
        const double got = minimal_enclosing_radius(flat.data(), count, dim);
        const double expect = oracle::meb_brute_force(pts);
        CHECK(got == doctest::Approx(expect).epsilon(1e-7));
    }
}

TEST_CASE("determinism: same input gives identical simplex stream") {
    std::mt19937_64 rng(12);
    auto c = oracle::random_cloud(rng, 12, 2);
    FilteredComplex a = cech_filtration(c, 2, 0.8);
    FilteredComplex b = cech_filtration(c, 2, 0.8);
    REQUIRE(a.simplices().size() == b.simplices().size());
    for (std::size_t i = 0; i < a.simplices().size(); ++i) {
        CHECK(a.simplices()[i].filt == b.simplices()[i].filt);
        CHECK(a.simplices()[i].dim == b.simplices()[i].dim);
        CHECK(a.simplices()[i].v == b.simplices()[i].v);
    }
}

TEST_CASE("subcomplex outside ball") {
    PointCloud line(1);
    const int n = 21;
    for (int i = 0; i < n; ++i) line.push_back({-1.0 + 2.0 * i / (n - 1)});
    auto full = std::make_shared<FilteredComplex>(cech_filtration(line, 2, 0.3));

    SUBCASE("r = 0 keeps everything") {
        auto [sub, inc] = subcomplex_outside_ball(full, 0.0);
        CHECK(sub->simplices().size() == full->simplices().size());
        inc.validate();
    }
    SUBCASE("r beyond max norm drops everything") {
        auto [sub, inc] = subcomplex_outside_ball(full, 5.0);
        CHECK(sub->simplices().empty());
    }
    SUBCASE("r = 0.5 leaves two arcs") {
        auto [sub, inc] = subcomplex_outside_ball(full, 0.5);
        inc.validate();
        // Count components of the subcomplex at small alpha via a quick scan:
        // vertices with |x| >= 0.5 form two contiguous runs.
        std::size_t vcount = sub->vertices().size();
        CHECK(vcount == 12);  // 6 on each side (|x| >= 0.5 on the grid)
    }
    SUBCASE("negative r is an error") {
        CHECK_THROWS_AS(subcomplex_outside_ball(full, -0.1), std::invalid_argument);
    }
}

TEST_CASE("inclusion of subsample") {
    PointCloud sup = cloud2({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    PointCloud sub = cloud2({{1, 0}, {0, 1}});
    auto fsup = std::make_shared<FilteredComplex>(cech_filtration(sup, 2, 1.2));
    auto fsub = std::make_shared<FilteredComplex>(cech_filtration(sub, 2, 1.2));

    ComplexInclusion inc = inclusion_of_subsample(fsub, fsup);
    CHECK(inc.vertex_map[0] == 1);
    CHECK(inc.vertex_map[1] == 2);

    // Identity inclusion.
    ComplexInclusion id = inclusion_of_subsample(fsup, fsup);
    for (uint32_t i = 0; i < sup.size(); ++i) CHECK(id.vertex_map[i] == i);

    // Non-subset errors out.
    PointCloud alien = cloud2({{9, 9}});
    auto falien = std::make_shared<FilteredComplex>(cech_filtration(alien, 2, 1.0));
    CHECK_THROWS_AS(inclusion_of_subsample(falien, fsup), std::invalid_argument);
}

TEST_CASE("complex text export") {
    PointCloud c = cloud2({{0, 0}, {1, 0}});
    FilteredComplex f = cech_filtration(c, 1, 1.0);
    const std::string path = "export_test_complex.txt";
    export_complex(f, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "0;0");
    CHECK(lines[1] == "1;0");
    CHECK(lines[2] == "0 1;0.5");
    std::remove(path.c_str());
}
