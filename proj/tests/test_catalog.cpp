#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/catalog.hpp"
#include "core/expr.hpp"
#include "core/flow.hpp"

using namespace np3;

namespace {

double quantity_at(const CatalogEntry& e, const std::string& field_id,
                   const std::string& quantity, const ChartPoint& p) {
    const auto& K = e.field(field_id);
    if (quantity == "S") return curvature(e.chart, p).S;
    if (quantity == "ric_kk") return triad_curvature(e.chart, K, p).ric_kk;
    if (quantity == "sup_Rk") return principal_check(e.chart, K, p).sup_Rk;
    if (quantity == "killing_residual") return killing_residual(e.chart, K, p);
    const SpinCoefficients sc = spin_coefficients(e.chart, K, p);
    if (quantity == "abs_omega") return std::abs(sc.omega);
    if (quantity == "div") return sc.div;
    if (quantity == "kappa_abs") return std::abs(sc.kappa);
    if (quantity == "sigma_abs") return std::abs(sc.sigma);
    FAIL("unknown quantity ", quantity);
    return 0.0;
}

}  // namespace

TEST_CASE("the catalog lists six manifolds") {
    const auto ids = catalog_ids();
    REQUIRE(ids.size() == 6);
    for (const auto& id : ids) CHECK_NOTHROW(load(id));
}

TEST_CASE("every expected value is reproduced within its tolerance") {
    for (const auto& id : catalog_ids()) {
        CatalogEntry e = load(id);
        auto pts = sample_points(e.chart, e.sample_box, 5, 42, 1e-3);
        pts.push_back(e.default_point);
        for (const auto& ev : e.expected) {
            for (const auto& p : pts) {
                const double got = quantity_at(e, ev.field_id, ev.quantity, p);
                INFO(id, "/", ev.field_id, " ", ev.quantity, " got=", got,
                     " want=", ev.value);
                CHECK(std::abs(got - ev.value) < ev.tol);
            }
        }
    }
}

TEST_CASE("the round sphere scales with its radius") {
    CatalogEntry e = load("s3_round", CatalogParams{2.0, 0.8});
    const ChartPoint p = e.default_point;
    CHECK(std::abs(curvature(e.chart, p).S - 1.5) < 1e-9);
    const SpinCoefficients sc = spin_coefficients(e.chart, e.field("hopf"), p);
    CHECK(std::abs(std::abs(sc.omega) - 1.0) < 1e-9);
}

TEST_CASE("the squashed sphere degenerates to the round one at lambda 1") {
    CatalogEntry round = load("s3_round");
    CatalogEntry squashed = load("berger", CatalogParams{1.0, 1.0});
    for (const auto& p :
         sample_points(round.chart, round.sample_box, 10, 9, 1e-3)) {
        const ChartPoint q{"berger", p.u};
        CHECK(std::abs(curvature(round.chart, p).S -
                       curvature(squashed.chart, q).S) < 1e-8);
        const SpinCoefficients a =
            spin_coefficients(round.chart, round.field("hopf"), p);
        const SpinCoefficients b =
            spin_coefficients(squashed.chart, squashed.field("hopf"), q);
        CHECK(std::abs(a.div - b.div) < 1e-8);
        CHECK(std::abs(a.omega - b.omega) < 1e-8);
        CHECK(std::abs(a.shear_mag2 - b.shear_mag2) < 1e-8);
        CHECK(std::abs(a.kappa - b.kappa) < 1e-8);
    }
}

TEST_CASE("bad manifold requests are rejected") {
    CHECK_THROWS_AS(load("torus"), Error);
    try {
        load("torus");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::UnknownManifold);
    }
    CHECK_THROWS_AS(load("s3_round", CatalogParams{-1.0, 0.8}), Error);
    CHECK_THROWS_AS(load("berger", CatalogParams{1.0, 0.0}), Error);
    CatalogEntry e = load("nil");
    CHECK_THROWS_AS(e.field("hopf"), Error);
}

TEST_CASE("expression grammar evaluates and reports errors") {
    const Vec3 u = {0.5, -1.25, 2.0};
    CHECK(Expr::parse("u1^2 + sin(u2)*cos(u3)").eval(u) ==
          doctest::Approx(0.25 + std::sin(-1.25) * std::cos(2.0))
              .epsilon(1e-14));
    CHECK(Expr::parse("-u1^2").eval(u) == doctest::Approx(-0.25));
    CHECK(Expr::parse("2^3^2").eval(u) == doctest::Approx(512.0));
    CHECK(Expr::parse("(u1 + u2) / u3").eval(u) ==
          doctest::Approx(-0.375));
    CHECK(Expr::parse("exp(log(u3))").eval(u) == doctest::Approx(2.0));
    CHECK(Expr::parse("cosh(u1)^2 - sinh(u1)^2").eval(u) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(Expr::parse("u4 + 1"), Error);
    CHECK_THROWS_AS(Expr::parse("sin 0.5"), Error);
    CHECK_THROWS_AS(Expr::parse("1 +"), Error);
    CHECK_THROWS_AS(Expr::parse("(1"), Error);
}

TEST_CASE("declarative charts run through the full pipeline") {
    const std::string text = R"json({
        "chart_id": "halfplane_product",
        "domain": [[-2, 2], [0.5, 4], [-2, 2]],
        "g": [["1/(u2*u2)", "0", "0"],
              ["0", "1/(u2*u2)", "0"],
              ["0", "0", "1"]],
        "fields": {"vertical": ["0", "0", "1"]}
    })json";
    CatalogEntry e = load_custom(text);
    CHECK(e.manifold_id == "halfplane_product");
    const ChartPoint p = e.default_point;
    CHECK(std::abs(curvature(e.chart, p).S + 2.0) < 1e-4);
    const auto pts = sample_points(e.chart, e.sample_box, 10, 42, 1e-3);
    const auto reports =
        run_identity_suite(e.chart, e.field("vertical"), pts, 1e-3);
    for (const auto& r : reports) {
        INFO(r.equation_id, " max=", r.max_residual);
        CHECK(r.pass);
    }
}

TEST_CASE("malformed declarative charts are rejected") {
    CHECK_THROWS_AS(load_custom("not json"), Error);
    CHECK_THROWS_AS(load_custom(R"({"domain": [[0,1],[0,1],[0,1]]})"), Error);
    CHECK_THROWS_AS(load_custom(R"({
        "domain": [[1, 0], [0, 1], [0, 1]],
        "g": [["1","0","0"],["0","1","0"],["0","0","1"]]
    })"),
                    Error);
}
