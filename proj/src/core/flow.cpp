#include "flow.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace np3 {

namespace {

double ric_kk_at(const MetricChart& chart, const VectorFieldSpec& K,
                 const ChartPoint& p) {
    const CurvatureData cd = curvature(chart, p);
    const Vec3 k = unit_field_at(chart, K, p);
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += cd.Ric[i][j] * k[i] * k[j];
    return s;
}

void require_geodesic(const MetricChart& chart, const VectorFieldSpec& K,
                      const ChartPoint& p0) {
    const ScreenScalars s = screen_scalars(chart, K, p0);
    if (std::abs(s.kappa) >= 1e-6) {
        std::ostringstream os;
        os << "field '" << K.field_id
           << "' is not geodesic at the start point: |kappa| = "
           << std::abs(s.kappa);
        throw Error(ErrorCode::NotGeodesicField, os.str());
    }
}

struct TransportState {
    Vec3 u{};
    Vec3 v{};
    double div = 0.0;
    double omega = 0.0;
};

TransportState transport_rhs(const MetricChart& chart,
                             const VectorFieldSpec& K,
                             const TransportState& s, double t) {
    if (!chart.inside(s.u)) {
        std::ostringstream os;
        os << "flow left chart domain at t = " << t;
        throw Error(ErrorCode::LeftChartDomain, os.str());
    }
    const ChartPoint q{chart.chart_id, s.u};
    const Arr3 G = christoffel(chart, q);
    TransportState d;
    d.u = s.v;
    for (int k = 0; k < 3; ++k) {
        double a = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a += G[k][i][j] * s.v[i] * s.v[j];
        d.v[k] = -a;
    }
    const ScreenScalars sc = screen_scalars(chart, K, q);
    const double ric = ric_kk_at(chart, K, q);
    d.div = 0.5 * s.omega * s.omega - 2.0 * sc.shear_mag2 -
            0.5 * s.div * s.div - ric;
    d.omega = -s.div * s.omega;
    return d;
}

TransportState axpy(const TransportState& s, double h,
                    const TransportState& d) {
    TransportState r;
    r.u = s.u + h * d.u;
    r.v = s.v + h * d.v;
    r.div = s.div + h * d.div;
    r.omega = s.omega + h * d.omega;
    return r;
}

FlowSample direct_sample(const MetricChart& chart, const VectorFieldSpec& K,
                         double t, const Vec3& u, const Vec3& v) {
    FlowSample fs;
    fs.t = t;
    fs.p = {chart.chart_id, u};
    fs.v = v;
    const ScreenScalars sc = screen_scalars(chart, K, fs.p);
    fs.div_direct = sc.div;
    fs.omega_direct = sc.omega;
    fs.shear_mag2 = sc.shear_mag2;
    fs.S = curvature(chart, fs.p).S;
    return fs;
}

}  // namespace

std::vector<FlowSample> transport_kinematics(const MetricChart& chart,
                                             const VectorFieldSpec& K,
                                             const ChartPoint& p0,
                                             double length, double step) {
    if (step <= 0.0)
        throw Error(ErrorCode::StepNotPositive, "flow step must be > 0");
    require_geodesic(chart, K, p0);

    TransportState s;
    s.u = p0.u;
    s.v = unit_field_at(chart, K, p0);
    const ScreenScalars sc0 = screen_scalars(chart, K, p0);
    s.div = sc0.div;
    s.omega = sc0.omega;

    std::vector<FlowSample> out;
    {
        FlowSample fs = direct_sample(chart, K, 0.0, s.u, s.v);
        fs.div_transported = s.div;
        fs.omega_transported = s.omega;
        out.push_back(fs);
    }
    if (length == 0.0) return out;

    const int n = std::max(1, static_cast<int>(std::llround(length / step)));
    const double h = length / n;
    for (int i = 0; i < n; ++i) {
        const double t = i * h;
        const TransportState k1 = transport_rhs(chart, K, s, t);
        const TransportState k2 =
            transport_rhs(chart, K, axpy(s, 0.5 * h, k1), t + 0.5 * h);
        const TransportState k3 =
            transport_rhs(chart, K, axpy(s, 0.5 * h, k2), t + 0.5 * h);
        const TransportState k4 =
            transport_rhs(chart, K, axpy(s, h, k3), t + h);
        for (int c = 0; c < 3; ++c) {
            s.u[c] += h / 6.0 *
                      (k1.u[c] + 2.0 * k2.u[c] + 2.0 * k3.u[c] + k4.u[c]);
            s.v[c] += h / 6.0 *
                      (k1.v[c] + 2.0 * k2.v[c] + 2.0 * k3.v[c] + k4.v[c]);
        }
        s.div += h / 6.0 * (k1.div + 2.0 * k2.div + 2.0 * k3.div + k4.div);
        s.omega +=
            h / 6.0 * (k1.omega + 2.0 * k2.omega + 2.0 * k3.omega + k4.omega);
        if (!chart.inside(s.u)) {
            std::ostringstream os;
            os << "flow left chart domain at t = " << (i + 1) * h;
            throw Error(ErrorCode::LeftChartDomain, os.str());
        }
        FlowSample fs = direct_sample(chart, K, (i + 1) * h, s.u, s.v);
        fs.div_transported = s.div;
        fs.omega_transported = s.omega;
        out.push_back(fs);
    }
    return out;
}

OmegaRigidityReport omega_rigidity(const MetricChart& chart,
                                   const VectorFieldSpec& K,
                                   const ChartPoint& p0, double length,
                                   double step) {
    require_geodesic(chart, K, p0);
    const Vec3 v0 = unit_field_at(chart, K, p0);
    const auto curve = geodesic_integrate(chart, p0, v0, length, step);

    OmegaRigidityReport rep;
    rep.length = length;
    rep.omega_min_abs = std::numeric_limits<double>::infinity();
    // sign changes only count between values clear of rounding noise
    constexpr double dead_band = 1e-9;
    double prev = 0.0;
    for (const auto& gs : curve) {
        const double w = screen_scalars(chart, K, gs.p).omega;
        rep.omega_min_abs = std::min(rep.omega_min_abs, std::abs(w));
        rep.omega_max_abs = std::max(rep.omega_max_abs, std::abs(w));
        if (std::abs(w) > dead_band) {
            if (prev != 0.0 && prev * w < 0.0) rep.sign_changes += 1;
            prev = w;
        }
    }
    return rep;
}

FocusingReport focusing_check(const MetricChart& chart,
                              const VectorFieldSpec& K, const ChartPoint& p0,
                              double length, double step, double tol) {
    require_geodesic(chart, K, p0);
    const Vec3 v0 = unit_field_at(chart, K, p0);
    const auto curve = geodesic_integrate(chart, p0, v0, length, step);

    FocusingReport rep;
    rep.length = length;
    rep.min_div = std::numeric_limits<double>::infinity();
    std::optional<double> t0;
    double u0 = 0.0;
    for (const auto& gs : curve) {
        const ScreenScalars sc = screen_scalars(chart, K, gs.p);
        const double ric = ric_kk_at(chart, K, gs.p);
        if (ric < -tol) {
            std::ostringstream os;
            os << "Ric(k,k) = " << ric << " < 0 at t = " << gs.t;
            throw Error(ErrorCode::HypothesesViolated, os.str());
        }
        if (std::abs(sc.omega) >= tol) {
            std::ostringstream os;
            os << "|omega| = " << std::abs(sc.omega)
               << " >= tol at t = " << gs.t
               << "; flow is not hypersurface-orthogonal";
            throw Error(ErrorCode::HypothesesViolated, os.str());
        }
        rep.min_div = std::min(rep.min_div, sc.div);
        if (!t0 && sc.div < 0.0) {
            t0 = gs.t;
            u0 = sc.div;
            rep.predicted_blowup_t = gs.t + 2.0 / std::abs(sc.div);
        }
        if (t0) {
            // comparison solution of u' = -u^2/2 from (t0, u0)
            const double denom = 1.0 + 0.5 * u0 * (gs.t - *t0);
            if (denom > 0.0) {
                const double cmp = u0 / denom;
                const double slack =
                    std::max(1e-6, 1e-2 * std::abs(cmp));
                if (sc.div > cmp + slack) rep.comparison_bound_holds = false;
            }
        }
        if (!rep.threshold_crossing_t && sc.div <= -1e3)
            rep.threshold_crossing_t = gs.t;
    }
    return rep;
}

PrincipalReport principal_check(const MetricChart& chart,
                                const VectorFieldSpec& K, const ChartPoint& p,
                                double tol, double fd_deriv) {
    const Triad t = build_frame(chart, K, p, {});
    const CurvatureData cd = curvature(chart, p);
    const SpinCoefficients sc = spin_coefficients(chart, K, p);

    const std::array<Vec3, 3> frame = {t.k, t.x, t.y};
    auto contract = [&cd](const Vec3& a, const Vec3& b, const Vec3& c,
                          const Vec3& d) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        s += cd.Riem[i][j][k][l] * a[i] * b[j] * c[k] * d[l];
        return s;
    };

    PrincipalReport rep;
    rep.S = cd.S;
    double riem_max = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                const double rk =
                    contract(t.k, frame[a], frame[b], frame[c]);
                rep.sup_Rk = std::max(rep.sup_Rk, std::abs(rk));
                for (int d = 0; d < 3; ++d)
                    riem_max = std::max(
                        riem_max, std::abs(contract(frame[d], frame[a],
                                                    frame[b], frame[c])));
            }
    rep.nonflat = riem_max > tol;
    rep.two_principal = rep.nonflat && rep.sup_Rk < tol;

    rep.kappaS_residual = std::abs(sc.kappa * cd.S);
    rep.shear_omega_residual =
        std::abs(sc.shear_mag2 - 0.25 * sc.omega * sc.omega);

    const FrameOptions locked{t.seed_index, 0.0};
    const ScalarFieldC s_field = [&chart](const ChartPoint& q) {
        return Complex(curvature(chart, q).S);
    };
    const Complex kS = frame_derivative(chart, K, s_field, p,
                                        TriadDirection::k, fd_deriv, locked);
    rep.scalar_evolution_residual = std::abs(kS + sc.div * cd.S);
    return rep;
}

GSReport goldberg_sachs_check(const MetricChart& chart,
                              const VectorFieldSpec& K,
                              const std::vector<ChartPoint>& samples,
                              double tol) {
    if (samples.empty())
        throw Error(ErrorCode::BadParameter, "no sample points given");

    std::vector<double> svals;
    svals.reserve(samples.size());
    for (const auto& p : samples) {
        svals.push_back(curvature(chart, p).S);
        const double w = screen_scalars(chart, K, p).omega;
        if (std::abs(w) >= tol) {
            std::ostringstream os;
            os << "|omega| = " << std::abs(w)
               << " >= tol: field not hypersurface-orthogonal at sample";
            throw Error(ErrorCode::HypothesesViolated, os.str());
        }
    }
    double mean = 0.0;
    for (double s : svals) mean += s;
    mean /= svals.size();
    for (double s : svals) {
        if (std::abs(s - mean) > tol * std::max(1.0, std::abs(mean))) {
            std::ostringstream os;
            os << "scalar curvature not constant over samples: " << s
               << " vs mean " << mean;
            throw Error(ErrorCode::HypothesesViolated, os.str());
        }
    }
    if (std::abs(mean) <= tol)
        throw Error(ErrorCode::HypothesesViolated,
                    "scalar curvature vanishes; corollary hypotheses unmet");

    GSReport rep;
    rep.S_mean = mean;
    bool all_equal = true;
    for (const auto& p : samples) {
        GSPointResult r;
        r.p = p;
        const PrincipalReport pr = principal_check(chart, K, p, tol);
        r.sup_Rk = pr.sup_Rk;
        r.two_principal = pr.sup_Rk < tol;
        r.killing_residual = killing_residual(chart, K, p);
        r.killing = r.killing_residual < tol;
        if (r.two_principal != r.killing) all_equal = false;
        rep.points.push_back(r);
    }
    rep.biconditional_holds = all_equal;
    return rep;
}

}  // namespace np3
