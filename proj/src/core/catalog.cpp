#include "catalog.hpp"

#include <cmath>

#include <json.hpp>

#include "expr.hpp"

namespace np3 {

namespace {

Mat3 diag(double a, double b, double c) {
    return Mat3{{{a, 0.0, 0.0}, {0.0, b, 0.0}, {0.0, 0.0, c}}};
}

CatalogEntry make_euclidean() {
    CatalogEntry e;
    e.manifold_id = "euclidean";
    e.description = "flat R^3, identity metric";
    e.chart.chart_id = "euclidean";
    e.chart.domain = {Interval{-4.0, 4.0}, Interval{-4.0, 4.0},
                      Interval{-4.0, 4.0}};
    e.chart.g = [](const Vec3&) { return diag(1.0, 1.0, 1.0); };
    e.chart.dg = [](const Vec3&) { return Arr3{}; };

    e.fields["constant"] =
        VectorFieldSpec{"constant", [](const ChartPoint&) {
                            return Vec3{0.0, 0.0, 1.0};
                        }};
    e.fields["radial_out"] =
        VectorFieldSpec{"radial_out", [](const ChartPoint& p) {
                            return p.u;  // normalized by the pipeline
                        }};
    e.fields["radial_in"] =
        VectorFieldSpec{"radial_in", [](const ChartPoint& p) {
                            return Vec3{-p.u[0], -p.u[1], -p.u[2]};
                        }};

    e.sample_box = {Interval{0.5, 1.5}, Interval{0.5, 1.5},
                    Interval{0.5, 1.5}};
    // off-axis so the inward radial flow misses the origin over unit length
    e.default_point = {"euclidean", {1.0, 0.5, 0.0}};
    e.flow_length = 1.0;

    e.expected = {
        {"constant", "S", 0.0, 1e-9, "constant metric"},
        {"constant", "div", 0.0, 1e-9, "parallel field"},
        {"constant", "abs_omega", 0.0, 1e-9, "parallel field"},
        {"constant", "kappa_abs", 0.0, 1e-9, "parallel field"},
        {"constant", "sigma_abs", 0.0, 1e-9, "parallel field"},
        {"constant", "killing_residual", 0.0, 1e-9, "parallel field"},
        {"radial_out", "S", 0.0, 1e-9, "constant metric"},
        {"radial_out", "kappa_abs", 0.0, 1e-8,
         "radial lines are straight; polar-coordinate screen map (1/r) Id"},
        {"radial_out", "sigma_abs", 0.0, 1e-8, "screen map is isotropic"},
        {"radial_out", "abs_omega", 0.0, 1e-8, "gradient flow of r"},
    };
    return e;
}

// Hopf coordinates (eta, xi1, xi2): the round 3-sphere of radius r has
// metric diag(r^2, r^2 sin^2 eta, r^2 cos^2 eta); the fiber direction
// d_xi1 + d_xi2 is a unit-speed great-circle flow after normalization.
CatalogEntry make_s3_round(double r) {
    if (r <= 0.0)
        throw Error(ErrorCode::BadParameter, "s3_round requires r > 0");
    CatalogEntry e;
    e.manifold_id = "s3_round";
    e.description = "round 3-sphere, radius r, Hopf coordinates";
    e.chart.chart_id = "s3_round";
    e.chart.domain = {Interval{0.1, M_PI_2 - 0.1}, Interval{-50.0, 50.0},
                      Interval{-50.0, 50.0}};
    const double r2 = r * r;
    e.chart.g = [r2](const Vec3& u) {
        const double s = std::sin(u[0]), c = std::cos(u[0]);
        return diag(r2, r2 * s * s, r2 * c * c);
    };
    e.chart.dg = [r2](const Vec3& u) {
        const double s = std::sin(u[0]), c = std::cos(u[0]);
        Arr3 d{};
        d[0][1][1] = 2.0 * r2 * s * c;
        d[0][2][2] = -2.0 * r2 * s * c;
        return d;
    };

    e.fields["hopf"] = VectorFieldSpec{"hopf", [](const ChartPoint&) {
                                           return Vec3{0.0, 1.0, 1.0};
                                       }};

    e.sample_box = {Interval{0.35, 1.2}, Interval{0.0, 6.0},
                    Interval{0.0, 6.0}};
    e.default_point = {"s3_round", {0.7, 0.3, 0.4}};
    e.flow_length = 2.0 * M_PI * r;

    const std::string milnor =
        "left-invariant frame oracle: [e_i,e_j] = (2/r) e_k, Milnor Ricci";
    e.expected = {
        {"hopf", "S", 6.0 / r2, 1e-8, milnor},
        {"hopf", "ric_kk", 2.0 / r2, 1e-8, milnor},
        {"hopf", "abs_omega", 2.0 / r, 1e-8, milnor},
        {"hopf", "kappa_abs", 0.0, 1e-9, "Hopf fibers are great circles"},
        {"hopf", "sigma_abs", 0.0, 1e-9, milnor},
        {"hopf", "div", 0.0, 1e-9, milnor},
        {"hopf", "killing_residual", 0.0, 1e-8, milnor},
    };
    return e;
}

// Upper half space w > 0 with metric (du^2 + dv^2 + dw^2)/w^2 (K = -1).
// The radial field flows away from the center point (0, 0, 1) along
// hyperbolic geodesics; hyperbolic distance d satisfies
// cosh d = 1 + |p - c|^2 / (2 w) for c = (0,0,1).
CatalogEntry make_h3() {
    CatalogEntry e;
    e.manifold_id = "h3";
    e.description = "hyperbolic 3-space, upper-half-space chart, K = -1";
    e.chart.chart_id = "h3";
    e.chart.domain = {Interval{-10.0, 10.0}, Interval{-10.0, 10.0},
                      Interval{0.05, 30.0}};
    e.chart.g = [](const Vec3& u) {
        const double iw2 = 1.0 / (u[2] * u[2]);
        return diag(iw2, iw2, iw2);
    };
    e.chart.dg = [](const Vec3& u) {
        const double d = -2.0 / (u[2] * u[2] * u[2]);
        Arr3 out{};
        out[2][0][0] = d;
        out[2][1][1] = d;
        out[2][2][2] = d;
        return out;
    };

    e.fields["radial"] = VectorFieldSpec{"radial", [](const ChartPoint& p) {
        const double x = p.u[0], y = p.u[1], w = p.u[2];
        const double A = x * x + y * y + (w - 1.0) * (w - 1.0);
        if (A < 1e-20)
            throw Error(ErrorCode::ZeroField,
                        "radial field undefined at its center");
        const double Q = 1.0 + A / (2.0 * w);
        const double root = std::sqrt(Q * Q - 1.0);
        // Euclidean partials of the distance function, index raised by w^2.
        const Vec3 dQ = {x / w, y / w,
                         (w - 1.0) / w - A / (2.0 * w * w)};
        const double w2 = w * w;
        return Vec3{w2 * dQ[0] / root, w2 * dQ[1] / root, w2 * dQ[2] / root};
    }};

    e.sample_box = {Interval{-0.4, 0.4}, Interval{-0.4, 0.4},
                    Interval{1.4, 2.5}};
    e.default_point = {"h3", {0.0, 0.0, std::exp(0.5)}};
    e.flow_length = 1.0;

    e.expected = {
        {"radial", "S", -6.0, 1e-8, "constant curvature K = -1, S = 6K"},
        {"radial", "ric_kk", -2.0, 1e-8, "Ric = 2K g with K = -1"},
        {"radial", "abs_omega", 0.0, 1e-8, "gradient flow of the distance"},
        {"radial", "kappa_abs", 0.0, 1e-8, "distance gradients are geodesic"},
        {"radial", "sigma_abs", 0.0, 1e-7,
         "screen map coth(r) Id is isotropic"},
    };
    return e;
}

CatalogEntry make_h2xr() {
    CatalogEntry e;
    e.manifold_id = "h2xr";
    e.description = "H^2 x R product, half-plane chart for the H^2 factor";
    e.chart.chart_id = "h2xr";
    e.chart.domain = {Interval{-10.0, 10.0}, Interval{0.1, 10.0},
                      Interval{-10.0, 10.0}};
    e.chart.g = [](const Vec3& u) {
        const double iv2 = 1.0 / (u[1] * u[1]);
        return diag(iv2, iv2, 1.0);
    };
    e.chart.dg = [](const Vec3& u) {
        const double d = -2.0 / (u[1] * u[1] * u[1]);
        Arr3 out{};
        out[1][0][0] = d;
        out[1][1][1] = d;
        return out;
    };

    e.fields["vertical"] =
        VectorFieldSpec{"vertical", [](const ChartPoint&) {
                            return Vec3{0.0, 0.0, 1.0};
                        }};

    e.sample_box = {Interval{-1.0, 1.0}, Interval{0.5, 2.0},
                    Interval{-1.0, 1.0}};
    e.default_point = {"h2xr", {0.1, 1.0, 0.2}};
    e.flow_length = 1.0;

    const std::string prod = "product metric: Ric = diag(-1,-1,0), nabla k = 0";
    e.expected = {
        {"vertical", "S", -2.0, 1e-8, prod},
        {"vertical", "ric_kk", 0.0, 1e-8, prod},
        {"vertical", "sup_Rk", 0.0, 1e-8, prod},
        {"vertical", "div", 0.0, 1e-9, prod},
        {"vertical", "abs_omega", 0.0, 1e-9, prod},
        {"vertical", "kappa_abs", 0.0, 1e-9, prod},
        {"vertical", "sigma_abs", 0.0, 1e-9, prod},
        {"vertical", "killing_residual", 0.0, 1e-9, prod},
    };
    return e;
}

// Heisenberg group with the left-invariant metric dx^2 + dy^2 + (dz - x dy)^2.
CatalogEntry make_nil() {
    CatalogEntry e;
    e.manifold_id = "nil";
    e.description = "Heisenberg group, left-invariant metric";
    e.chart.chart_id = "nil";
    e.chart.domain = {Interval{-3.0, 3.0}, Interval{-3.0, 3.0},
                      Interval{-3.0, 3.0}};
    e.chart.g = [](const Vec3& u) {
        const double x = u[0];
        return Mat3{{{1.0, 0.0, 0.0},
                     {0.0, 1.0 + x * x, -x},
                     {0.0, -x, 1.0}}};
    };
    e.chart.dg = [](const Vec3& u) {
        Arr3 out{};
        out[0][1][1] = 2.0 * u[0];
        out[0][1][2] = -1.0;
        out[0][2][1] = -1.0;
        return out;
    };

    e.fields["vertical"] =
        VectorFieldSpec{"vertical", [](const ChartPoint&) {
                            return Vec3{0.0, 0.0, 1.0};
                        }};

    e.sample_box = {Interval{-1.0, 1.0}, Interval{-1.0, 1.0},
                    Interval{-1.0, 1.0}};
    e.default_point = {"nil", {0.2, -0.3, 0.1}};
    e.flow_length = 2.0;

    const std::string milnor =
        "left-invariant frame oracle: [e1,e2] = e3, Milnor Ricci "
        "(-1/2,-1/2,1/2); confirmed by direct coordinate curvature";
    e.expected = {
        {"vertical", "S", -0.5, 1e-6, milnor},
        {"vertical", "ric_kk", 0.5, 1e-6, milnor},
        {"vertical", "abs_omega", 1.0, 1e-6, milnor},
        {"vertical", "kappa_abs", 0.0, 1e-8, milnor},
        {"vertical", "sigma_abs", 0.0, 1e-8, milnor},
        {"vertical", "div", 0.0, 1e-8, milnor},
        {"vertical", "killing_residual", 0.0, 1e-8, milnor},
    };
    return e;
}

// Berger sphere: round metric with the Hopf-fiber direction rescaled by
// lambda; g = g_round + (lambda^2 - 1) sigma (x) sigma with
// sigma = sin^2(eta) dxi1 + cos^2(eta) dxi2. lambda = 1 is the round sphere.
CatalogEntry make_berger(double lambda) {
    if (lambda <= 0.0)
        throw Error(ErrorCode::BadParameter, "berger requires lambda > 0");
    CatalogEntry e;
    e.manifold_id = "berger";
    e.description = "Berger sphere, Hopf fiber scaled by lambda";
    e.chart.chart_id = "berger";
    e.chart.domain = {Interval{0.1, M_PI_2 - 0.1}, Interval{-50.0, 50.0},
                      Interval{-50.0, 50.0}};
    const double a = lambda * lambda - 1.0;
    e.chart.g = [a](const Vec3& u) {
        const double s2 = std::sin(u[0]) * std::sin(u[0]);
        const double c2 = 1.0 - s2;
        Mat3 g{};
        g[0][0] = 1.0;
        g[1][1] = s2 + a * s2 * s2;
        g[1][2] = a * s2 * c2;
        g[2][1] = g[1][2];
        g[2][2] = c2 + a * c2 * c2;
        return g;
    };
    e.chart.dg = [a](const Vec3& u) {
        const double s = std::sin(u[0]), c = std::cos(u[0]);
        const double s2 = s * s, c2 = c * c, sc = s * c;
        Arr3 d{};
        d[0][1][1] = 2.0 * sc + 4.0 * a * s2 * sc;
        d[0][1][2] = 2.0 * a * sc * (c2 - s2);
        d[0][2][1] = d[0][1][2];
        d[0][2][2] = -2.0 * sc - 4.0 * a * c2 * sc;
        return d;
    };

    e.fields["hopf"] = VectorFieldSpec{"hopf", [](const ChartPoint&) {
                                           return Vec3{0.0, 1.0, 1.0};
                                       }};

    e.sample_box = {Interval{0.35, 1.2}, Interval{0.0, 6.0},
                    Interval{0.0, 6.0}};
    e.default_point = {"berger", {0.7, 0.3, 0.4}};
    e.flow_length = 2.0 * M_PI;

    const std::string milnor =
        "Milnor oracle on the orthonormal left-invariant frame: "
        "[e2,e3] = 2 lambda e1, [e3,e1] = (2/lambda) e2, "
        "[e1,e2] = (2/lambda) e3";
    const double l2 = lambda * lambda;
    e.expected = {
        {"hopf", "S", 8.0 - 2.0 * l2, 1e-7, milnor},
        {"hopf", "ric_kk", 2.0 * l2, 1e-7, milnor},
        {"hopf", "abs_omega", 2.0 * lambda, 1e-7, milnor},
        {"hopf", "kappa_abs", 0.0, 1e-8, milnor},
        {"hopf", "sigma_abs", 0.0, 1e-8, milnor},
        {"hopf", "div", 0.0, 1e-8, milnor},
        {"hopf", "killing_residual", 0.0, 1e-7, milnor},
    };
    return e;
}

}  // namespace

const VectorFieldSpec& CatalogEntry::field(const std::string& field_id) const {
    const auto it = fields.find(field_id);
    if (it == fields.end())
        throw Error(ErrorCode::BadConfig, "manifold '" + manifold_id +
                                              "' has no field '" + field_id +
                                              "'");
    return it->second;
}

CatalogEntry load(const std::string& manifold_id, const CatalogParams& params) {
    if (manifold_id == "euclidean") return make_euclidean();
    if (manifold_id == "s3_round") return make_s3_round(params.r);
    if (manifold_id == "h3") return make_h3();
    if (manifold_id == "h2xr") return make_h2xr();
    if (manifold_id == "nil") return make_nil();
    if (manifold_id == "berger") return make_berger(params.lambda);
    throw Error(ErrorCode::UnknownManifold,
                "unknown manifold '" + manifold_id + "'");
}

std::vector<std::string> catalog_ids() {
    return {"euclidean", "s3_round", "h3", "h2xr", "nil", "berger"};
}

CatalogEntry load_custom(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadConfig,
                    std::string("bad custom chart JSON: ") + e.what());
    }
    try {
        CatalogEntry e;
        e.manifold_id = j.value("chart_id", "custom");
        e.description = "user-supplied declarative metric";
        e.chart.chart_id = e.manifold_id;
        const auto& dom = j.at("domain");
        for (int i = 0; i < 3; ++i) {
            e.chart.domain[i].lo = dom.at(i).at(0).get<double>();
            e.chart.domain[i].hi = dom.at(i).at(1).get<double>();
            if (!(e.chart.domain[i].lo < e.chart.domain[i].hi))
                throw Error(ErrorCode::BadConfig, "empty domain interval");
        }
        e.chart.margin = j.value("margin", 1e-2);
        e.chart.fd_step = j.value("fd_step", 1e-4);

        std::array<std::array<Expr, 3>, 3> gex = {{
            {Expr::parse(j.at("g").at(0).at(0).get<std::string>()),
             Expr::parse(j.at("g").at(0).at(1).get<std::string>()),
             Expr::parse(j.at("g").at(0).at(2).get<std::string>())},
            {Expr::parse(j.at("g").at(1).at(0).get<std::string>()),
             Expr::parse(j.at("g").at(1).at(1).get<std::string>()),
             Expr::parse(j.at("g").at(1).at(2).get<std::string>())},
            {Expr::parse(j.at("g").at(2).at(0).get<std::string>()),
             Expr::parse(j.at("g").at(2).at(1).get<std::string>()),
             Expr::parse(j.at("g").at(2).at(2).get<std::string>())},
        }};
        e.chart.g = [gex](const Vec3& u) {
            Mat3 g{};
            for (int i = 0; i < 3; ++i)
                for (int j2 = 0; j2 < 3; ++j2) g[i][j2] = gex[i][j2].eval(u);
            // symmetrize: declarative tables may repeat off-diagonal entries
            for (int i = 0; i < 3; ++i)
                for (int j2 = i + 1; j2 < 3; ++j2) {
                    const double s = 0.5 * (g[i][j2] + g[j2][i]);
                    g[i][j2] = s;
                    g[j2][i] = s;
                }
            return g;
        };
        // dg stays null: partials come from finite differences.

        if (j.contains("fields")) {
            for (const auto& [name, comps] : j.at("fields").items()) {
                std::array<Expr, 3> fx = {
                    Expr::parse(comps.at(0).get<std::string>()),
                    Expr::parse(comps.at(1).get<std::string>()),
                    Expr::parse(comps.at(2).get<std::string>())};
                e.fields[name] = VectorFieldSpec{
                    name, [fx](const ChartPoint& p) {
                        return Vec3{fx[0].eval(p.u), fx[1].eval(p.u),
                                    fx[2].eval(p.u)};
                    }};
            }
        }

        for (int i = 0; i < 3; ++i) {
            const double w = e.chart.domain[i].hi - e.chart.domain[i].lo;
            e.sample_box[i].lo = e.chart.domain[i].lo + 0.1 * w;
            e.sample_box[i].hi = e.chart.domain[i].hi - 0.1 * w;
            e.default_point.u[i] =
                0.5 * (e.chart.domain[i].lo + e.chart.domain[i].hi);
        }
        e.default_point.chart_id = e.chart.chart_id;
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::BadConfig,
                    std::string("bad custom chart JSON: ") + ex.what());
    }
}

}  // namespace np3
