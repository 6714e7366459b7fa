#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/catalog.hpp"
#include "core/verify.hpp"
#include "oracles.hpp"

using namespace np3;

namespace {

struct Case {
    std::string manifold;
    std::string field;
};

const std::vector<Case> kCases = {
    {"euclidean", "constant"}, {"euclidean", "radial_out"},
    {"s3_round", "hopf"},      {"h3", "radial"},
    {"h2xr", "vertical"},      {"nil", "vertical"},
    {"berger", "hopf"},
};

}  // namespace

TEST_CASE("the complex triad satisfies the bilinear normalization") {
    for (const auto& c : kCases) {
        CatalogEntry e = load(c.manifold);
        const auto& K = e.field(c.field);
        for (const auto& p :
             sample_points(e.chart, e.sample_box, 10, 5, 1e-3)) {
            const Triad tri = build_frame(e.chart, K, p);
            const Mat3 g = metric_at(e.chart, p).g;
            CHECK(std::abs(inner(g, tri.k, tri.k) - 1.0) < 1e-12);
            CHECK(std::abs(inner(g, tri.x, tri.x) - 1.0) < 1e-12);
            CHECK(std::abs(inner(g, tri.y, tri.y) - 1.0) < 1e-12);
            CHECK(std::abs(inner(g, tri.k, tri.x)) < 1e-12);
            CHECK(std::abs(inner(g, tri.k, tri.y)) < 1e-12);
            CHECK(std::abs(inner(g, tri.x, tri.y)) < 1e-12);
            CHECK(std::abs(inner_c(g, tri.m, tri.m)) < 1e-12);
            CHECK(std::abs(inner_c(g, tri.m, tri.mbar) - 1.0) < 1e-12);
            CHECK(std::abs(inner_c(g, to_complex(tri.k), tri.m)) < 1e-12);
        }
    }
}

TEST_CASE("frames are positively oriented and deterministic") {
    CatalogEntry e = load("h3");
    const auto& K = e.field("radial");
    for (const auto& p : sample_points(e.chart, e.sample_box, 10, 7, 1e-3)) {
        const Triad a = build_frame(e.chart, K, p);
        const Triad b = build_frame(e.chart, K, p);
        CHECK(a.seed_index == b.seed_index);
        for (int i = 0; i < 3; ++i) {
            CHECK(a.x[i] == b.x[i]);
            CHECK(a.y[i] == b.y[i]);
        }
        const Mat3 rows = {a.k, a.x, a.y};
        const double vol = det3(rows) * metric_at(e.chart, p).sqrt_det;
        CHECK(vol > 0.0);
    }
}

TEST_CASE("the rho coefficient packages divergence and rotation") {
    for (const auto& c : kCases) {
        CatalogEntry e = load(c.manifold);
        const auto& K = e.field(c.field);
        for (const auto& p :
             sample_points(e.chart, e.sample_box, 5, 11, 1e-3)) {
            const SpinCoefficients sc = spin_coefficients(e.chart, K, p);
            const Complex packed = -2.0 * sc.rho;
            CHECK(std::abs(packed.real() - sc.div) < 1e-10);
            CHECK(std::abs(packed.imag() - sc.omega) < 1e-10);
            CHECK(std::abs(sc.epsilon.real()) < 1e-8);
            CHECK(std::abs(std::abs(sc.sigma) * std::abs(sc.sigma) -
                           sc.shear_mag2) < 1e-10);
        }
    }
}

TEST_CASE("sigma agrees with the screen-map shear") {
    for (const auto& c : kCases) {
        CatalogEntry e = load(c.manifold);
        const auto& K = e.field(c.field);
        const ChartPoint p = e.default_point;
        const SpinCoefficients sc = spin_coefficients(e.chart, K, p);
        const Complex shear = complex_shear_from_frame(e.chart, K, p);
        CHECK(std::abs(sc.sigma - shear) < 1e-10);
    }
}

TEST_CASE("screen rotation transforms the coefficients covariantly") {
    CatalogEntry e = load("h3");
    const auto& K = e.field("radial");
    const ChartPoint p = e.default_point;
    const SpinCoefficients base = spin_coefficients(e.chart, K, p);
    for (double theta : {0.3, 1.1, -2.4}) {
        const RotatedTriad rot = rotate_triad(e.chart, K, p, theta);
        const Complex ph(std::cos(theta), std::sin(theta));
        CHECK(std::abs(rot.coeffs.kappa - ph * base.kappa) < 1e-9);
        CHECK(std::abs(rot.coeffs.sigma - ph * ph * base.sigma) < 1e-9);
        CHECK(std::abs(rot.coeffs.rho - base.rho) < 1e-9);
        CHECK(std::abs(rot.coeffs.div - base.div) < 1e-9);
        CHECK(std::abs(rot.coeffs.omega - base.omega) < 1e-9);
    }
}

TEST_CASE("left-invariant oracle fixes the homogeneous expected values") {
    // Unit round sphere: bi-invariant frame with [e_i, e_j] = 2 e_k.
    {
        const auto frame = oracle::milnor(2.0, 2.0, 2.0);
        const auto cur = oracle::curvature(frame);
        const auto kin = oracle::kinematics(frame, 0);
        CatalogEntry e = load("s3_round");
        const ChartPoint p = e.default_point;
        CHECK(std::abs(curvature(e.chart, p).S - cur.S) < 1e-9);
        const TriadCurvature tc = triad_curvature(e.chart, e.field("hopf"), p);
        CHECK(std::abs(tc.ric_kk - cur.Ric[0][0]) < 1e-9);
        const SpinCoefficients sc =
            spin_coefficients(e.chart, e.field("hopf"), p);
        CHECK(std::abs(std::abs(sc.omega) - std::abs(kin.omega)) < 1e-9);
        CHECK(std::abs(sc.div - kin.div) < 1e-9);
    }
    // Heisenberg group: [e1, e2] = e3, fiber field e3.
    {
        const auto frame = oracle::milnor(0.0, 0.0, 1.0);
        const auto cur = oracle::curvature(frame);
        const auto kin = oracle::kinematics(frame, 2);
        CatalogEntry e = load("nil");
        const ChartPoint p = e.default_point;
        CHECK(std::abs(cur.S - (-0.5)) < 1e-15);
        CHECK(std::abs(curvature(e.chart, p).S - cur.S) < 1e-6);
        const TriadCurvature tc =
            triad_curvature(e.chart, e.field("vertical"), p);
        CHECK(std::abs(tc.ric_kk - cur.Ric[2][2]) < 1e-6);
        const SpinCoefficients sc =
            spin_coefficients(e.chart, e.field("vertical"), p);
        CHECK(std::abs(std::abs(sc.omega) - std::abs(kin.omega)) < 1e-8);
    }
    // Squashed sphere, fiber scaled by lambda.
    {
        const double lambda = 0.8;
        const auto frame =
            oracle::milnor(2.0 * lambda, 2.0 / lambda, 2.0 / lambda);
        const auto cur = oracle::curvature(frame);
        const auto kin = oracle::kinematics(frame, 0);
        CHECK(std::abs(cur.S - (8.0 - 2.0 * lambda * lambda)) < 1e-12);
        CatalogEntry e = load("berger", CatalogParams{1.0, lambda});
        const ChartPoint p = e.default_point;
        CHECK(std::abs(curvature(e.chart, p).S - cur.S) < 1e-8);
        const TriadCurvature tc = triad_curvature(e.chart, e.field("hopf"), p);
        CHECK(std::abs(tc.ric_kk - cur.Ric[0][0]) < 1e-8);
        const SpinCoefficients sc =
            spin_coefficients(e.chart, e.field("hopf"), p);
        CHECK(std::abs(std::abs(sc.omega) - std::abs(kin.omega)) < 1e-8);
        CHECK(kin.kappa_mag < 1e-15);
    }
}

TEST_CASE("classification flags match the model geometries") {
    {
        CatalogEntry e = load("s3_round");
        const FlowFlags f =
            classify(e.chart, e.field("hopf"), e.default_point, 1e-7);
        CHECK(f.geodesic);
        CHECK(f.divergence_free);
        CHECK(f.shear_free);
        CHECK(!f.hypersurface_orthogonal);
        CHECK(f.killing);
    }
    {
        CatalogEntry e = load("h3");
        const FlowFlags f =
            classify(e.chart, e.field("radial"), e.default_point, 1e-7);
        CHECK(f.geodesic);
        CHECK(!f.divergence_free);
        CHECK(f.shear_free);
        CHECK(f.hypersurface_orthogonal);
        CHECK(!f.killing);
    }
    {
        CatalogEntry e = load("euclidean");
        const FlowFlags f =
            classify(e.chart, e.field("constant"), e.default_point, 1e-7);
        CHECK(f.geodesic);
        CHECK(f.divergence_free);
        CHECK(f.shear_free);
        CHECK(f.hypersurface_orthogonal);
        CHECK(f.killing);
    }
}

TEST_CASE("degenerate fields are rejected") {
    CatalogEntry e = load("euclidean");
    CHECK_THROWS_AS(unit_field_at(e.chart, e.field("radial_out"),
                                  ChartPoint{"euclidean", {0, 0, 0}}),
                    Error);
    VectorFieldSpec not_unit{"not_unit", [](const ChartPoint&) {
                                 return Vec3{2.0, 0.0, 0.0};
                             }};
    not_unit.normalize = false;
    try {
        unit_field_at(e.chart, not_unit, e.default_point);
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::FieldNotUnit);
    }
}

TEST_CASE("killing residual separates isometric from merely geodesic flows") {
    CatalogEntry s3 = load("s3_round");
    CHECK(killing_residual(s3.chart, s3.field("hopf"), s3.default_point) <
          1e-8);
    CatalogEntry h3 = load("h3");
    CHECK(killing_residual(h3.chart, h3.field("radial"), h3.default_point) >
          1.0);
}
