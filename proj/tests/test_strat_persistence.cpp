#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "strata/strat_persistence.hpp"

using namespace strata;

namespace {
StronglyStratifiedSample random_strong(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto cloud = oracle::random_cloud(rng, n, 2);
    std::vector<double> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(u01(rng));
    return StronglyStratifiedSample(cloud, s);
}

bool same_barcode(const Barcode& a, const Barcode& b) {
    for (int d = 0; d <= std::max(a.max_degree(), b.max_degree()); ++d) {
        if (a.bars(d).size() != b.bars(d).size()) return false;
        for (std::size_t i = 0; i < a.bars(d).size(); ++i) {
            if (a.bars(d)[i].birth != b.bars(d)[i].birth) return false;
            const bool fa = a.bars(d)[i].finite(), fb = b.bars(d)[i].finite();
            if (fa != fb) return false;
            if (fa && a.bars(d)[i].death != b.bars(d)[i].death) return false;
        }
    }
    return true;
}
}  // namespace

TEST_CASE("diagram params validation and order") {
    CHECK_THROWS_AS((DiagramParams{0.3, 0.2}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((DiagramParams{0.0, 0.2}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((DiagramParams{0.2, 1.0}).validate(), std::invalid_argument);
    DiagramParams a{0.25, 0.3}, b{0.2, 0.35};
    CHECK(a.leq(b));
    CHECK(!b.leq(a));
}

TEST_CASE("diagification levels") {
    PointCloud c(2);
    for (int i = 0; i < 4; ++i) c.push_back({0.1 * i, 0.0});

    SUBCASE("s identically 0 puts everything in p") {
        StronglyStratifiedSample t(c, {0, 0, 0, 0});
        DiagramSample d = diagification(t, {0.2, 0.3});
        CHECK(d.d_p.size() == 4);
        CHECK(d.d_pq.size() == 0);
        CHECK(d.d_q.size() == 0);
    }
    SUBCASE("s identically 1 puts everything in q") {
        StronglyStratifiedSample t(c, {1, 1, 1, 1});
        DiagramSample d = diagification(t, {0.2, 0.3});
        CHECK(d.d_p.size() == 0);
        CHECK(d.d_pq.size() == 0);
        CHECK(d.d_q.size() == 4);
    }
    SUBCASE("threshold values land on both sides (closed intervals)") {
        StronglyStratifiedSample t(c, {0.1, 0.2, 0.3, 0.9});
        DiagramSample d = diagification(t, {0.2, 0.3});
        CHECK(d.d_p.size() == 3);   // 0.1, 0.2, 0.3
        CHECK(d.d_pq.size() == 2);  // 0.2, 0.3
        CHECK(d.d_q.size() == 3);   // 0.2, 0.3, 0.9
    }
}

TEST_CASE("stratified cech structure") {
    PointCloud c(2);
    for (int i = 0; i < 6; ++i) c.push_back({0.15 * i, 0.0});

    SUBCASE("empty band gives two disjoint complexes") {
        StronglyStratifiedSample t(c, {0, 0, 0, 1, 1, 1});
        DiagramSample d = diagification(t, {0.4, 0.6});
        StratifiedFiltration sf = stratified_cech(d, 2, 0.4);
        CHECK(sf.pq->simplices().empty());
        CHECK(!sf.p->simplices().empty());
        CHECK(!sf.q->simplices().empty());
    }
    SUBCASE("equal components give equal complexes and identity inclusions") {
        StronglyStratifiedSample t(c, {0.25, 0.25, 0.25, 0.25, 0.25, 0.25});
        DiagramSample d = diagification(t, {0.2, 0.3});
        REQUIRE(d.d_p.size() == 6);
        REQUIRE(d.d_pq.size() == 6);
        REQUIRE(d.d_q.size() == 6);
        StratifiedFiltration sf = stratified_cech(d, 2, 0.4);
        CHECK(sf.p->simplices().size() == sf.pq->simplices().size());
        CHECK(sf.q->simplices().size() == sf.pq->simplices().size());
        for (uint32_t i = 0; i < 6; ++i) {
            CHECK(sf.pq_to_p.vertex_map[i] == i);
            CHECK(sf.pq_to_q.vertex_map[i] == i);
        }
    }
}

TEST_CASE("stratified barcodes on empty input") {
    DiagramSample d(PointCloud(2), PointCloud(2), PointCloud(2));
    StratifiedFiltration sf = stratified_cech(d, 2, 0.4);
    StratifiedBarcode sb = stratified_barcodes(sf);
    CHECK(sb.p.empty());
    CHECK(sb.pq.empty());
    CHECK(sb.q.empty());
}

TEST_CASE("epers equals its composition on random inputs") {
    std::mt19937_64 rng(89);
    for (int t = 0; t < 5; ++t) {
        auto cloud = oracle::random_cloud(rng, 14, 2);
        std::vector<uint8_t> mask(14, 0);
        for (int i = 0; i < 14; ++i) mask[i] = rng() % 4 == 0;
        StratifiedSample s(cloud, mask);
        const DiagramParams v{0.2, 0.3};

        StratifiedFiltration direct = epers(s, v, 2, 0.5);
        StratifiedFiltration composed = stratified_cech(diagification(strong_str(s), v), 2, 0.5);

        StratifiedBarcode ba = stratified_barcodes(direct);
        StratifiedBarcode bb = stratified_barcodes(composed);
        CHECK(same_barcode(ba.p, bb.p));
        CHECK(same_barcode(ba.pq, bb.pq));
        CHECK(same_barcode(ba.q, bb.q));
    }
}

TEST_CASE("epers on a sample with empty singular stratum concentrates in q") {
    std::mt19937_64 rng(97);
    auto cloud = oracle::random_cloud(rng, 10, 2);
    StratifiedSample s(cloud, std::vector<uint8_t>(10, 0));
    StratifiedFiltration sf = epers(s, {0.2, 0.3}, 2, 0.5);
    CHECK(sf.p->simplices().empty());
    CHECK(sf.pq->simplices().empty());
    CHECK(sf.q->cloud().size() == 10);
}

TEST_CASE("epers_grid monotonicity and singleton equivalence") {
    std::mt19937_64 rng(101);
    auto cloud = oracle::random_cloud(rng, 12, 2);
    std::vector<uint8_t> mask(12, 0);
    mask[0] = mask[5] = 1;
    StratifiedSample s(cloud, mask);

    SUBCASE("singleton grid equals epers") {
        std::vector<DiagramParams> grid{{0.2, 0.3}};
        auto fs = epers_grid(s, grid, 2, 0.5);
        REQUIRE(fs.size() == 1);
        StratifiedBarcode a = stratified_barcodes(fs[0]);
        StratifiedBarcode b = stratified_barcodes(epers(s, grid[0], 2, 0.5));
        CHECK(same_barcode(a.p, b.p));
        CHECK(same_barcode(a.pq, b.pq));
        CHECK(same_barcode(a.q, b.q));
    }
    SUBCASE("nested pair is verified and contained") {
        std::vector<DiagramParams> grid{{0.25, 0.3}, {0.2, 0.35}};
        auto fs = epers_grid(s, grid, 2, 0.5);  // throws if containment fails
        REQUIRE(fs.size() == 2);
        CHECK(fs[0].p->cloud().size() <= fs[1].p->cloud().size());
        CHECK(fs[0].pq->cloud().size() <= fs[1].pq->cloud().size());
        CHECK(fs[0].q->cloud().size() <= fs[1].q->cloud().size());
    }
    SUBCASE("4x4 grid runs and respects the order") {
        std::vector<DiagramParams> grid;
        for (double lo : {0.15, 0.2, 0.25, 0.3})
            for (double hi : {0.35, 0.4, 0.45, 0.5}) grid.push_back({lo, hi});
        auto fs = epers_grid(s, grid, 2, 0.5);
        CHECK(fs.size() == 16);
    }
}

TEST_CASE("diagram barcode distance basics and translation bound") {
    std::mt19937_64 rng(103);
    for (double delta : {0.01, 0.04, 0.07, 0.1}) {
        auto base = oracle::random_cloud(rng, 12, 2);
        std::vector<double> s;
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int i = 0; i < 12; ++i) s.push_back(u01(rng));
        DiagramSample d = diagification(StronglyStratifiedSample(base, s), {0.3, 0.6});

        double t[2] = {delta, 0.0};
        DiagramSample d2(translate(d.d_p, {t, 2}), translate(d.d_pq, {t, 2}),
                         translate(d.d_q, {t, 2}));

        // Caps comfortably above every feature scale of these small clouds.
        StratifiedBarcode a = stratified_barcodes(stratified_cech(d, 2, 3.0));
        StratifiedBarcode b = stratified_barcodes(stratified_cech(d2, 2, 3.0));
        CHECK(diagram_barcode_distance(a, a, 0) == 0.0);
        for (int deg = 0; deg <= 1; ++deg)
            CHECK(diagram_barcode_distance(a, b, deg) <= delta + 1e-9);
    }
}

TEST_CASE("one-lipschitz shadow on random diagram perturbations") {
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int t = 0; t < 12; ++t) {
        auto base = oracle::random_cloud(rng, 10, 2);
        std::vector<double> s;
        for (int i = 0; i < 10; ++i) s.push_back(u01(rng));
        DiagramSample d = diagification(StronglyStratifiedSample(base, s), {0.3, 0.6});

        // Componentwise perturbation: jitter every point of the underlying
        // cloud and rebuild the same membership pattern.
        const double delta = 0.005 + 0.03 * u01(rng);
        PointCloud moved(2);
        for (std::size_t i = 0; i < base.size(); ++i) {
            auto p = base.point(i);
            moved.push_back({p[0] + delta * u(rng), p[1] + delta * u(rng)});
        }
        DiagramSample d2 = diagification(StronglyStratifiedSample(moved, s), {0.3, 0.6});

        const double dd = diagram_distance(d, d2);
        StratifiedBarcode a = stratified_barcodes(stratified_cech(d, 2, 3.0));
        StratifiedBarcode b = stratified_barcodes(stratified_cech(d2, 2, 3.0));
        for (int deg = 0; deg <= 1; ++deg)
            CHECK(diagram_barcode_distance(a, b, deg) <= dd + 1e-9);
    }
}
