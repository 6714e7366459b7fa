#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/catalog.hpp"
#include "core/verify.hpp"

using namespace np3;

TEST_CASE("flat chart has vanishing connection and curvature") {
    CatalogEntry e = load("euclidean");
    for (const auto& p :
         sample_points(e.chart, e.sample_box, 20, 1, 1e-3)) {
        const CurvatureData cd = curvature(e.chart, p);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    CHECK(std::abs(cd.Gamma[i][j][k]) < 1e-12);
                    for (int l = 0; l < 3; ++l)
                        CHECK(std::abs(cd.Riem[i][j][k][l]) < 1e-10);
                }
        CHECK(std::abs(cd.S) < 1e-10);
    }
}

TEST_CASE("finite-difference metric partials match the analytic tables") {
    for (const std::string id : {"s3_round", "h3", "h2xr", "nil", "berger"}) {
        CatalogEntry e = load(id);
        MetricChart fd_chart = e.chart;
        fd_chart.dg = nullptr;
        for (const auto& p :
             sample_points(e.chart, e.sample_box, 10, 3, 1e-3)) {
            const Arr3 a = metric_partials(e.chart, p.u);
            const Arr3 b = metric_partials(fd_chart, p.u);
            for (int k = 0; k < 3; ++k)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        CHECK(std::abs(a[k][i][j] - b[k][i][j]) < 1e-9);
        }
    }
}

TEST_CASE("metric must be positive definite") {
    MetricChart bad;
    bad.chart_id = "bad";
    bad.domain = {Interval{-1, 1}, Interval{-1, 1}, Interval{-1, 1}};
    bad.g = [](const Vec3&) {
        return Mat3{{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
    };
    CHECK_THROWS_AS(metric_at(bad, ChartPoint{"bad", {0, 0, 0}}), Error);
    try {
        metric_at(bad, ChartPoint{"bad", {0, 0, 0}});
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::MetricNotPositiveDefinite);
    }
}

TEST_CASE("points outside the chart margin are rejected") {
    CatalogEntry e = load("euclidean");
    CHECK_THROWS_AS(metric_at(e.chart, ChartPoint{"euclidean", {5, 0, 0}}),
                    Error);
    CHECK_THROWS_AS(
        metric_at(e.chart, ChartPoint{"euclidean", {3.995, 0, 0}}), Error);
    CHECK_NOTHROW(metric_at(e.chart, ChartPoint{"euclidean", {3.9, 0, 0}}));
}

TEST_CASE("covariant derivative of coordinate fields reproduces the "
          "connection coefficients") {
    CatalogEntry e = load("h3");
    const ChartPoint p = e.default_point;
    const Arr3 Gamma = christoffel(e.chart, p);
    for (int j = 0; j < 3; ++j) {
        VectorField ej = [j](const ChartPoint&) {
            Vec3 v{};
            v[j] = 1.0;
            return v;
        };
        for (int i = 0; i < 3; ++i) {
            Vec3 dir{};
            dir[i] = 1.0;
            const Vec3 cd = covariant_derivative(e.chart, p, ej, dir);
            for (int k = 0; k < 3; ++k)
                CHECK(std::abs(cd[k] - Gamma[k][i][j]) < 1e-9);
        }
    }
}

TEST_CASE("geodesics of the flat metric are straight lines") {
    CatalogEntry e = load("euclidean");
    const ChartPoint p0{"euclidean", {0.5, -0.25, 1.0}};
    const Vec3 v0 = {0.6, 0.8, 0.0};
    const auto path = geodesic_integrate(e.chart, p0, v0, 2.0, 1e-3);
    REQUIRE(path.size() == 2001);
    for (const auto& s : path) {
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(s.p.u[i] - (p0.u[i] + s.t * v0[i])) < 1e-12);
            CHECK(std::abs(s.v[i] - v0[i]) < 1e-12);
        }
    }
}

TEST_CASE("great circles on the round sphere close up after their period") {
    CatalogEntry e = load("s3_round");
    const ChartPoint p0 = e.default_point;
    const Vec3 v0 = {0.0, 1.0, 1.0};  // unit fiber direction
    const auto path =
        geodesic_integrate(e.chart, p0, v0, 2.0 * M_PI, 1e-3);
    const auto& end = path.back();
    CHECK(std::abs(end.p.u[0] - p0.u[0]) < 1e-9);
    CHECK(std::abs(end.p.u[1] - (p0.u[1] + 2.0 * M_PI)) < 1e-9);
    CHECK(std::abs(end.p.u[2] - (p0.u[2] + 2.0 * M_PI)) < 1e-9);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(end.v[i] - v0[i]) < 1e-9);
}

TEST_CASE("geodesic integration requires a unit initial velocity") {
    CatalogEntry e = load("euclidean");
    const ChartPoint p0{"euclidean", {0, 0, 0}};
    CHECK_THROWS_AS(
        geodesic_integrate(e.chart, p0, Vec3{2, 0, 0}, 1.0, 1e-2), Error);
    CHECK_THROWS_AS(
        geodesic_integrate(e.chart, p0, Vec3{1, 0, 0}, 1.0, -1e-2), Error);
}

TEST_CASE("flows that exit the chart are reported") {
    CatalogEntry e = load("euclidean");
    const ChartPoint p0{"euclidean", {3.5, 0, 0}};
    try {
        geodesic_integrate(e.chart, p0, Vec3{1, 0, 0}, 2.0, 1e-2);
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::LeftChartDomain);
    }
}

TEST_CASE("hyperbolic half-space geodesic speed stays unit") {
    CatalogEntry e = load("h3");
    const ChartPoint p0 = e.default_point;
    const Vec3 k0 = unit_field_at(e.chart, e.field("radial"), p0);
    const auto path = geodesic_integrate(e.chart, p0, k0, 1.0, 1e-3);
    for (size_t i = 0; i < path.size(); i += 100) {
        const auto& s = path[i];
        const MetricValues mv = metric_at(e.chart, s.p);
        CHECK(std::abs(inner(mv.g, s.v, s.v) - 1.0) < 1e-10);
    }
}
