#include "oracle.hpp"

#include "voxshift/errors.hpp"
#include "voxshift/isovist/isovist.hpp"
#include "voxshift/metrics/metrics.hpp"
#include "voxshift/world/generate.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace voxshift;
using namespace voxshift::metrics;
using isovist::Headspace;
using isovist::IsovistSets;

namespace {

IsovistSets radial_only(const std::vector<double>& lengths) {
    IsovistSets s;
    s.centroid = Headspace{{0, 0, 0}};
    s.view_distance = 256;
    s.visible_headspaces = {{0, 0, 0}};
    s.support_blocks = {{0, -2, 0}};
    s.reachable = {{0, -2, 0}};
    int x = 1;
    for (double l : lengths) {
        s.perimeter.push_back({{x++, 0, 0}, 0});
        s.radials.push_back(l);
        s.radial_endpoints.push_back({l, 0, 0});
    }
    return s;
}

} // namespace

TEST_CASE("sealed cavity metrics") {
    const auto cls = world::default_classification();
    const auto box = oracle::build_world({3, 4, 3}, 4, {{{1, 1, 1}, "air"}, {{1, 2, 1}, "air"}});
    const isovist::IsovistContext ctx(box, cls);
    const auto s = isovist::compute_isovist(ctx, ctx.headspaces()[0], {256, 32});
    const auto m = compute_metrics(s);
    CHECK(m.area == 1);
    CHECK(m.diversity == 1);
    CHECK(m.reachability == 1);
    CHECK(m.occlusivity == 1.0);
    CHECK(m.clutter == 1.0);
    CHECK(m.real_perimeter_size == m.perimeter);
    CHECK(m.roundness * static_cast<double>(m.perimeter) == doctest::Approx(1.0));
    CHECK_FALSE(m.degenerate);
    // The deepest block is seen diagonally through the feet cell.
    CHECK(m.vista_length == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("constant radials") {
    const auto m = compute_metrics(radial_only({3.5, 3.5, 3.5, 3.5}));
    CHECK(m.var_radials == 0.0);
    CHECK(m.mean_radials == 3.5);
    CHECK(m.vista_length == 3.5);
    CHECK(m.perimeter == 4);
    CHECK(m.roundness == 0.25);
}

TEST_CASE("hand computed radial statistics") {
    const auto m = compute_metrics(radial_only({1.0, 2.0, 3.0, 6.0}));
    CHECK(m.mean_radials == doctest::Approx(3.0));
    CHECK(m.var_radials == doctest::Approx(3.5));
    CHECK(m.vista_length == 6.0);
    // Endpoints all lie on +x, mean endpoint is (3, 0, 0).
    CHECK(m.drift_length == doctest::Approx(3.0));
}

TEST_CASE("sky radials join the radial statistics") {
    auto s = radial_only({2.0});
    s.view_distance = 4;
    s.sky_endpoints = {{-4, 0, 0}};
    const auto m = compute_metrics(s);
    CHECK(m.mean_radials == doctest::Approx(3.0));
    CHECK(m.var_radials == doctest::Approx(1.0));
    CHECK(m.vista_length == 4.0);
    CHECK(m.drift_length == doctest::Approx(1.0));
    CHECK(m.perimeter == 1);
}

TEST_CASE("zero denominators give zero and mark the row") {
    IsovistSets s;
    s.visible_headspaces = {{0, 0, 0}};
    const auto m = compute_metrics(s);
    CHECK(m.roundness == 0.0);
    CHECK(m.openness == 0.0);
    CHECK(m.occlusivity == 0.0);
    CHECK(m.mean_radials == 0.0);
    CHECK(m.var_radials == 0.0);
    CHECK(m.degenerate);

    auto glass_only = radial_only({1.0});
    glass_only.real_perimeter.clear();
    const auto g = compute_metrics(glass_only);
    CHECK(g.openness == 0.0);
    CHECK(g.roundness == 1.0);
    CHECK(g.degenerate);
}

TEST_CASE("metrics match the definitions on random worlds") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 10; ++i) {
        const auto cls = i % 2 ? oracle::odd_classification() : world::default_classification();
        const auto w = oracle::random_world(rng, 4, 10);
        const isovist::IsovistContext ctx(w, cls);
        const int d = 3 + static_cast<int>(rng() % 12);
        for (std::size_t k = 0; k < ctx.headspaces().size(); k += 4) {
            const auto& hs = ctx.headspaces()[k];
            const auto m = compute_metrics(isovist::compute_isovist(ctx, hs, {d, 5}));
            const auto expect = oracle::metrics(oracle::isovist(w, cls, hs.head, d, 5), hs.head);
            const auto row = m.as_row();
            for (std::size_t c = 0; c < kMetricCount; ++c) {
                INFO(kMetricNames[c]);
                CHECK(row[c] == doctest::Approx(expect[c]).epsilon(1e-9));
            }
            CHECK(m.clutter >= 0.0);
            CHECK(m.clutter <= 1.0);
            CHECK(m.occlusivity >= 0.0);
            CHECK(m.occlusivity <= 1.0);
            CHECK(m.real_perimeter_size <= m.perimeter);
            CHECK(m.diversity <= m.perimeter);
            CHECK(m.diversity <= w.palette().size());
            CHECK(m.vista_length >= m.mean_radials);
            CHECK(m.vista_length <= d);
            if (m.perimeter > 0) CHECK(m.roundness == static_cast<double>(m.area) / static_cast<double>(m.perimeter));
            if (m.real_perimeter_size > 0)
                CHECK(m.openness == static_cast<double>(m.area) / static_cast<double>(m.real_perimeter_size));
        }
    }
}

TEST_CASE("population variance identity") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> l(1 + rng() % 40);
        for (auto& v : l) v = u(rng);
        const auto m = compute_metrics(radial_only(l));
        double mean = 0, sq = 0;
        for (double v : l) {
            mean += v;
            sq += v * v;
        }
        mean /= static_cast<double>(l.size());
        sq /= static_cast<double>(l.size());
        CHECK(m.var_radials == doctest::Approx(sq - mean * mean).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("metrics matrix ordering") {
    const IsovistMetrics a{.area = 1};
    const IsovistMetrics b{.area = 2};
    const std::vector<LocatedMetrics> rec{{Headspace{{0, 5, 0}}, a}, {Headspace{{3, 2, 9}}, b}, {Headspace{{1, 2, 0}}, a}};
    const auto m = metrics_matrix(rec);
    CHECK(m.heads == std::vector<Coord>{{1, 2, 0}, {3, 2, 9}, {0, 5, 0}});
    CHECK(m.rows[1][0] == 2.0);
    CHECK(m.rows[0] == m.rows[2]);
    CHECK(metrics_matrix(std::span(rec).first(1)).rows.size() == 1);
    CHECK_THROWS_AS(metrics_matrix({}), InvalidArgument);
}

TEST_CASE("interior of a flat plane is translation invariant") {
    const auto cls = world::default_classification();
    const auto flat = world::generate_flat_world({16, 8, 16}, 2, "stone", 0);
    const isovist::IsovistContext ctx(flat, cls);
    std::vector<LocatedMetrics> rec;
    for (const auto& h : ctx.headspaces())
        rec.push_back({h, compute_metrics(isovist::compute_isovist(ctx, h, {4, 32}))});
    const auto m = metrics_matrix(rec);
    std::optional<MetricRow> interior;
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        const auto& h = m.heads[i];
        if (h.x < 4 || h.x > 11 || h.z < 4 || h.z > 11) continue;
        if (!interior) interior = m.rows[i];
        for (std::size_t c = 0; c < kMetricCount; ++c) CHECK(m.rows[i][c] == doctest::Approx((*interior)[c]).epsilon(1e-12));
    }
    REQUIRE(interior);
    CHECK(m.rows.front()[0] < (*interior)[0]);
}

TEST_CASE("metrics CSV round trip") {
    IsovistMetrics m{.area = 3, .perimeter = 7, .diversity = 2, .var_radials = 1.0 / 3.0, .mean_radials = 2.5,
                     .roundness = 3.0 / 7.0, .openness = 0.5, .clutter = 1.0 / 3.0, .reachability = 9,
                     .occlusivity = 2.0 / 9.0, .drift_length = 0.125, .vista_length = 4.0, .real_perimeter_size = 6};
    m.degenerate = true;
    const std::vector<LocatedMetrics> rec{{Headspace{{-1, 4, 2}}, m}};
    const auto csv = format_metrics_csv(rec);
    CHECK(csv.rfind("x,y,z,area,perimeter,diversity,var_radials,mean_radials,roundness,openness,clutter,"
                    "reachability,occlusivity,drift_length,vista_length,real_perimeter_size,degenerate\n",
                    0) == 0);
    CHECK(csv.find("-1,4,2,3,7,2,0.333333333,2.5,") != std::string::npos);
    const auto back = parse_metrics_csv(csv);
    REQUIRE(back.size() == 1);
    CHECK(back[0].location.head == Coord{-1, 4, 2});
    CHECK(back[0].metrics.area == 3);
    CHECK(back[0].metrics.degenerate);
    CHECK(back[0].metrics.var_radials == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK_THROWS_AS(parse_metrics_csv("x,y\n1,2\n"), FormatError);
}
