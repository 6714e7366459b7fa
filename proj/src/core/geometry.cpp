#include "geometry.hpp"

#include <cmath>
#include <sstream>

namespace np3 {

Arr3 christoffel(const MetricChart& chart, const ChartPoint& p) {
    chart.require_inside(p.u);
    const MetricValues mv = metric_at(chart, p);
    const Arr3 dg = metric_partials(chart, p.u);
    Arr3 G{};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int l = 0; l < 3; ++l)
                    s += mv.g_inv[k][l] *
                         (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                G[k][i][j] = 0.5 * s;
            }
    return G;
}

CurvatureData curvature(const MetricChart& chart, const ChartPoint& p) {
    CurvatureData cd;
    cd.Gamma = christoffel(chart, p);
    const MetricValues mv = metric_at(chart, p);

    // dG[a][k][i][j] = d Gamma^k_ij / d u^a, 4th-order central differences.
    const double h = chart.fd_step;
    chart.require_stencil(p.u, h);
    Arr4 dG{};
    for (int a = 0; a < 3; ++a) {
        ChartPoint q = p;
        auto eval = [&](double off) {
            q.u = p.u;
            q.u[a] += off;
            return christoffel(chart, q);
        };
        const Arr3 gp2 = eval(2.0 * h), gp1 = eval(h);
        const Arr3 gm1 = eval(-h), gm2 = eval(-2.0 * h);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    dG[a][k][i][j] = (-gp2[k][i][j] + 8.0 * gp1[k][i][j] -
                                      8.0 * gm1[k][i][j] + gm2[k][i][j]) /
                                     (12.0 * h);
    }

    // R^m_kij = d_i G^m_jk - d_j G^m_ik + G^m_ip G^p_jk - G^m_jp G^p_ik,
    // then R_ijkl = g_lm R^m_kij.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                Vec3 up{};  // up[m] = R^m_kij
                for (int m = 0; m < 3; ++m) {
                    double s = dG[i][m][j][k] - dG[j][m][i][k];
                    for (int q = 0; q < 3; ++q)
                        s += cd.Gamma[m][i][q] * cd.Gamma[q][j][k] -
                             cd.Gamma[m][j][q] * cd.Gamma[q][i][k];
                    up[m] = s;
                }
                for (int l = 0; l < 3; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < 3; ++m) s += mv.g[l][m] * up[m];
                    cd.Riem[i][j][k][l] = s;
                }
            }

    // Ricci as the trace on the first and last slots, S = g^jk Ric_jk.
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            double s = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    s += mv.g_inv[a][b] * cd.Riem[a][j][k][b];
            cd.Ric[j][k] = s;
        }
    cd.S = 0.0;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) cd.S += mv.g_inv[j][k] * cd.Ric[j][k];
    return cd;
}

Vec3 covariant_derivative(const MetricChart& chart, const ChartPoint& p,
                          const VectorField& V, const Vec3& w) {
    const double h = chart.fd_step;
    chart.require_stencil(p.u, h);
    const Arr3 G = christoffel(chart, p);
    const Vec3 Vp = V(p);

    // Jacobian J[i][j] = d V^i / d u^j.
    Mat3 J{};
    for (int j = 0; j < 3; ++j) {
        ChartPoint q = p;
        auto eval = [&](double off) {
            q.u = p.u;
            q.u[j] += off;
            return V(q);
        };
        const Vec3 vp2 = eval(2.0 * h), vp1 = eval(h);
        const Vec3 vm1 = eval(-h), vm2 = eval(-2.0 * h);
        for (int i = 0; i < 3; ++i)
            J[i][j] = (-vp2[i] + 8.0 * vp1[i] - 8.0 * vm1[i] + vm2[i]) /
                      (12.0 * h);
    }

    Vec3 out{};
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j) {
            s += w[j] * J[i][j];
            for (int k = 0; k < 3; ++k) s += G[i][j][k] * w[j] * Vp[k];
        }
        out[i] = s;
    }
    return out;
}

CVec3 covariant_derivative_c(const MetricChart& chart, const ChartPoint& p,
                             const CVectorField& V, const CVec3& w) {
    const double h = chart.fd_step;
    chart.require_stencil(p.u, h);
    const Arr3 G = christoffel(chart, p);
    const CVec3 Vp = V(p);

    std::array<CVec3, 3> J{};  // J[j][i] = d V^i / d u^j
    for (int j = 0; j < 3; ++j) {
        ChartPoint q = p;
        auto eval = [&](double off) {
            q.u = p.u;
            q.u[j] += off;
            return V(q);
        };
        const CVec3 vp2 = eval(2.0 * h), vp1 = eval(h);
        const CVec3 vm1 = eval(-h), vm2 = eval(-2.0 * h);
        for (int i = 0; i < 3; ++i)
            J[j][i] = (-vp2[i] + 8.0 * vp1[i] - 8.0 * vm1[i] + vm2[i]) /
                      (12.0 * h);
    }

    CVec3 out{};
    for (int i = 0; i < 3; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < 3; ++j) {
            s += w[j] * J[j][i];
            for (int k = 0; k < 3; ++k) s += G[i][j][k] * w[j] * Vp[k];
        }
        out[i] = s;
    }
    return out;
}

namespace {

struct GeoState {
    Vec3 u{};
    Vec3 v{};
};

GeoState geo_rhs(const MetricChart& chart, const GeoState& s, double t) {
    ChartPoint q{chart.chart_id, s.u};
    if (!chart.inside(s.u)) {
        std::ostringstream os;
        os << "geodesic left chart domain at t = " << t;
        throw Error(ErrorCode::LeftChartDomain, os.str());
    }
    const Arr3 G = christoffel(chart, q);
    GeoState d;
    d.u = s.v;
    for (int k = 0; k < 3; ++k) {
        double a = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a += G[k][i][j] * s.v[i] * s.v[j];
        d.v[k] = -a;
    }
    return d;
}

}  // namespace

std::vector<GeoSample> geodesic_integrate(const MetricChart& chart,
                                          const ChartPoint& p0, const Vec3& v0,
                                          double length, double step) {
    if (step <= 0.0)
        throw Error(ErrorCode::StepNotPositive, "geodesic step must be > 0");
    const MetricValues mv = metric_at(chart, p0);
    const double n0 = std::sqrt(inner(mv.g, v0, v0));
    if (std::abs(n0 - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "initial velocity not unit: |v0|_g = " << n0;
        throw Error(ErrorCode::BadParameter, os.str());
    }

    std::vector<GeoSample> out;
    GeoState s{p0.u, v0};
    out.push_back({0.0, p0, v0});
    if (length == 0.0) return out;

    const int n = std::max(1, static_cast<int>(std::llround(length / step)));
    const double h = length / n;
    for (int i = 0; i < n; ++i) {
        const double t = i * h;
        const GeoState k1 = geo_rhs(chart, s, t);
        GeoState s2{s.u + 0.5 * h * k1.u, s.v + 0.5 * h * k1.v};
        const GeoState k2 = geo_rhs(chart, s2, t + 0.5 * h);
        GeoState s3{s.u + 0.5 * h * k2.u, s.v + 0.5 * h * k2.v};
        const GeoState k3 = geo_rhs(chart, s3, t + 0.5 * h);
        GeoState s4{s.u + h * k3.u, s.v + h * k3.v};
        const GeoState k4 = geo_rhs(chart, s4, t + h);
        for (int c = 0; c < 3; ++c) {
            s.u[c] += h / 6.0 *
                      (k1.u[c] + 2.0 * k2.u[c] + 2.0 * k3.u[c] + k4.u[c]);
            s.v[c] += h / 6.0 *
                      (k1.v[c] + 2.0 * k2.v[c] + 2.0 * k3.v[c] + k4.v[c]);
        }
        if (!chart.inside(s.u)) {
            std::ostringstream os;
            os << "geodesic left chart domain at t = " << (i + 1) * h;
            throw Error(ErrorCode::LeftChartDomain, os.str());
        }
        out.push_back({(i + 1) * h, ChartPoint{chart.chart_id, s.u}, s.v});
    }
    return out;
}

}  // namespace np3
