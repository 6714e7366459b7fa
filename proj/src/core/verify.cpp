#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace np3 {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

FrameOptions lock_frame(const MetricChart& chart, const VectorFieldSpec& K,
                        const ChartPoint& p, const FrameOptions& opts) {
    FrameOptions locked = opts;
    if (!locked.seed_index)
        locked.seed_index = build_frame(chart, K, p, opts).seed_index;
    return locked;
}

// Jacobian of a complex vector field: J[j] = d F / d u^j.
std::array<CVec3, 3> jacobian_c(const MetricChart& chart, const ChartPoint& p,
                                const CVectorField& F, double h) {
    chart.require_stencil(p.u, h);
    std::array<CVec3, 3> J{};
    for (int j = 0; j < 3; ++j) {
        ChartPoint q = p;
        auto eval = [&](double off) {
            q.u = p.u;
            q.u[j] += off;
            return F(q);
        };
        const CVec3 fp2 = eval(2.0 * h), fp1 = eval(h);
        const CVec3 fm1 = eval(-h), fm2 = eval(-2.0 * h);
        for (int i = 0; i < 3; ++i)
            J[j][i] = (-fp2[i] + 8.0 * fp1[i] - 8.0 * fm1[i] + fm2[i]) /
                      (12.0 * h);
    }
    return J;
}

CVec3 lie_bracket(const CVec3& V, const std::array<CVec3, 3>& JV,
                  const CVec3& W, const std::array<CVec3, 3>& JW) {
    CVec3 out{};
    for (int i = 0; i < 3; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < 3; ++j) s += V[j] * JW[j][i] - W[j] * JV[j][i];
        out[i] = s;
    }
    return out;
}

// Gradients of a batch of complex scalar fields; grads[q][j] = d f_q / d u^j.
std::vector<std::array<Complex, 3>> gradients(
    const MetricChart& chart, const ChartPoint& p,
    const std::function<std::vector<Complex>(const ChartPoint&)>& f,
    double h) {
    chart.require_stencil(p.u, h);
    std::vector<std::array<Complex, 3>> grads;
    for (int j = 0; j < 3; ++j) {
        ChartPoint q = p;
        auto eval = [&](double off) {
            q.u = p.u;
            q.u[j] += off;
            return f(q);
        };
        const auto fp2 = eval(2.0 * h), fp1 = eval(h);
        const auto fm1 = eval(-h), fm2 = eval(-2.0 * h);
        if (grads.empty()) grads.resize(fp2.size());
        for (size_t i = 0; i < fp2.size(); ++i)
            grads[i][j] =
                (-fp2[i] + 8.0 * fp1[i] - 8.0 * fm1[i] + fm2[i]) / (12.0 * h);
    }
    return grads;
}

Complex directional(const std::array<Complex, 3>& grad, const CVec3& dir) {
    return grad[0] * dir[0] + grad[1] * dir[1] + grad[2] * dir[2];
}

std::array<Complex, 3> conj_grad(const std::array<Complex, 3>& g) {
    return {std::conj(g[0]), std::conj(g[1]), std::conj(g[2])};
}

}  // namespace

Complex riemann_contract(const Arr4& Riem, const CVec3& a, const CVec3& b,
                         const CVec3& c, const CVec3& d) {
    Complex s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Complex ab = a[i] * b[j];
            if (ab == 0.0) continue;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    s += Riem[i][j][k][l] * ab * c[k] * d[l];
        }
    return s;
}

TriadCurvature triad_curvature(const MetricChart& chart,
                               const VectorFieldSpec& K, const ChartPoint& p,
                               const FrameOptions& opts) {
    const Triad t = build_frame(chart, K, p, opts);
    const CurvatureData cd = curvature(chart, p);
    const CVec3 kc = to_complex(t.k);

    auto ric = [&cd](const CVec3& a, const CVec3& b) {
        Complex s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += cd.Ric[i][j] * a[i] * b[j];
        return s;
    };

    TriadCurvature tc;
    tc.ric_kk = ric(kc, kc).real();
    tc.ric_mm = ric(t.m, t.m);
    tc.ric_km = ric(kc, t.m);
    tc.ric_mmbar = ric(t.m, t.mbar).real();
    tc.R_kmkm = riemann_contract(cd.Riem, kc, t.m, kc, t.m);
    tc.R_kmkmbar = riemann_contract(cd.Riem, kc, t.m, kc, t.mbar);
    tc.R_kmmmbar = riemann_contract(cd.Riem, kc, t.m, t.m, t.mbar);
    tc.R_mbarmmmbar = riemann_contract(cd.Riem, t.mbar, t.m, t.m, t.mbar);
    return tc;
}

Complex frame_derivative(const MetricChart& chart, const VectorFieldSpec& K,
                         const ScalarFieldC& f, const ChartPoint& p,
                         TriadDirection dir, double fd_deriv,
                         const FrameOptions& opts) {
    const FrameOptions locked = lock_frame(chart, K, p, opts);
    const Triad t = build_frame(chart, K, p, locked);
    const auto grads = gradients(
        chart, p,
        [&f](const ChartPoint& q) { return std::vector<Complex>{f(q)}; },
        fd_deriv);
    const CVec3 d = dir == TriadDirection::k   ? to_complex(t.k)
                    : dir == TriadDirection::m ? t.m
                                               : t.mbar;
    return directional(grads[0], d);
}

double check_covariant_table_point(const MetricChart& chart,
                                   const VectorFieldSpec& K,
                                   const ChartPoint& p,
                                   const FrameOptions& opts) {
    const FrameOptions locked = lock_frame(chart, K, p, opts);
    const Triad t = build_frame(chart, K, p, locked);
    const SpinCoefficients sc = spin_coefficients(chart, K, p, locked);

    const CVectorField kf = [&chart, &K](const ChartPoint& q) {
        return to_complex(unit_field_at(chart, K, q));
    };
    const CVectorField mf = [&chart, &K, locked](const ChartPoint& q) {
        return build_frame(chart, K, q, locked).m;
    };
    const CVectorField mbarf = [&chart, &K, locked](const ChartPoint& q) {
        return build_frame(chart, K, q, locked).mbar;
    };

    const CVec3 kc = to_complex(t.k);
    const Complex kb = std::conj(sc.kappa), rb = std::conj(sc.rho);

    double worst = 0.0;
    auto check = [&worst](const CVec3& lhs, const CVec3& rhs) {
        worst = std::max(worst, norm_inf_c(lhs - rhs));
    };
    // nabla_k k = -conj(kappa) m - kappa mbar
    check(covariant_derivative_c(chart, p, kf, kc),
          Complex(-1) * (kb * t.m + sc.kappa * t.mbar));
    // nabla_m k = -conj(rho) m - sigma mbar
    check(covariant_derivative_c(chart, p, kf, t.m),
          Complex(-1) * (rb * t.m + sc.sigma * t.mbar));
    // nabla_k m = kappa k + epsilon m
    check(covariant_derivative_c(chart, p, mf, kc),
          sc.kappa * kc + sc.epsilon * t.m);
    // nabla_m m = sigma k + beta m
    check(covariant_derivative_c(chart, p, mf, t.m),
          sc.sigma * kc + sc.beta * t.m);
    // nabla_m mbar = conj(rho) k - beta mbar
    check(covariant_derivative_c(chart, p, mbarf, t.m),
          rb * kc - sc.beta * t.mbar);
    return worst;
}

double check_brackets_point(const MetricChart& chart, const VectorFieldSpec& K,
                            const ChartPoint& p, const FrameOptions& opts) {
    const FrameOptions locked = lock_frame(chart, K, p, opts);
    const Triad t = build_frame(chart, K, p, locked);
    const SpinCoefficients sc = spin_coefficients(chart, K, p, locked);

    const CVectorField kf = [&chart, &K](const ChartPoint& q) {
        return to_complex(unit_field_at(chart, K, q));
    };
    const CVectorField mf = [&chart, &K, locked](const ChartPoint& q) {
        return build_frame(chart, K, q, locked).m;
    };

    const double h = chart.fd_step;
    const auto Jk = jacobian_c(chart, p, kf, h);
    const auto Jm = jacobian_c(chart, p, mf, h);
    std::array<CVec3, 3> Jmbar{};
    for (int j = 0; j < 3; ++j) Jmbar[j] = conj(Jm[j]);

    const CVec3 kc = to_complex(t.k);
    const Complex rb = std::conj(sc.rho);

    // [k,m] = kappa k + (epsilon + conj(rho)) m + sigma mbar
    const CVec3 km = lie_bracket(kc, Jk, t.m, Jm);
    const CVec3 km_rhs =
        sc.kappa * kc + (sc.epsilon + rb) * t.m + sc.sigma * t.mbar;
    // [m,mbar] = (conj(rho) - rho) k + conj(beta) m - beta mbar
    const CVec3 mmb = lie_bracket(t.m, Jm, t.mbar, Jmbar);
    const CVec3 mmb_rhs = (rb - sc.rho) * kc + std::conj(sc.beta) * t.m -
                          sc.beta * t.mbar;

    return std::max(norm_inf_c(km - km_rhs), norm_inf_c(mmb - mmb_rhs));
}

std::array<double, 5> check_sachs_point(const MetricChart& chart,
                                        const VectorFieldSpec& K,
                                        const ChartPoint& p, double fd_deriv,
                                        const FrameOptions& opts) {
    const FrameOptions locked = lock_frame(chart, K, p, opts);
    const Triad t = build_frame(chart, K, p, locked);
    const SpinCoefficients sc = spin_coefficients(chart, K, p, locked);
    const TriadCurvature tc = triad_curvature(chart, K, p, locked);

    const auto grads = gradients(
        chart, p,
        [&](const ChartPoint& q) {
            const SpinCoefficients s = spin_coefficients(chart, K, q, locked);
            return std::vector<Complex>{s.kappa, s.rho, s.sigma, s.epsilon,
                                        s.beta};
        },
        fd_deriv);
    const auto& gk = grads[0];  // kappa
    const auto& gr = grads[1];  // rho
    const auto& gs = grads[2];  // sigma
    const auto& ge = grads[3];  // epsilon
    const auto& gb = grads[4];  // beta

    const CVec3 kc = to_complex(t.k);
    const Complex kap = sc.kappa, rho = sc.rho, sig = sc.sigma;
    const Complex eps = sc.epsilon, bet = sc.beta;
    const Complex kb = std::conj(kap), rb = std::conj(rho);
    const Complex bb = std::conj(bet);

    std::array<double, 5> out{};
    out[0] = std::abs(directional(gr, kc) - directional(gk, t.mbar) -
                      (std::norm(kap) + std::norm(sig) + rho * rho + kap * bb +
                       0.5 * tc.ric_kk));
    out[1] = std::abs(directional(gs, kc) - directional(gk, t.m) -
                      (kap * kap + 2.0 * sig * eps + sig * (rho + rb) -
                       kap * bet + tc.ric_mm));
    out[2] = std::abs(directional(gr, t.m) - directional(gs, t.mbar) -
                      (2.0 * sig * bb + (rb - rho) * kap + tc.ric_km));
    out[3] = std::abs(directional(gb, kc) - directional(ge, t.m) -
                      (sig * (kb - bb) + kap * (eps - rb) + bet * (eps + rb) -
                       tc.ric_km));
    out[4] = std::abs(directional(conj_grad(gb), t.m) +
                      directional(gb, t.mbar) -
                      (std::norm(sig) - std::norm(rho) - 2.0 * std::norm(bet) +
                       (rho - rb) * eps - tc.ric_mmbar + 0.5 * tc.ric_kk));
    return out;
}

std::array<double, 2> check_bianchi_point(const MetricChart& chart,
                                          const VectorFieldSpec& K,
                                          const ChartPoint& p, double fd_deriv,
                                          const FrameOptions& opts) {
    const FrameOptions locked = lock_frame(chart, K, p, opts);
    const Triad t = build_frame(chart, K, p, locked);
    const SpinCoefficients sc = spin_coefficients(chart, K, p, locked);
    const TriadCurvature tc = triad_curvature(chart, K, p, locked);

    const auto grads = gradients(
        chart, p,
        [&](const ChartPoint& q) {
            const TriadCurvature c = triad_curvature(chart, K, q, locked);
            return std::vector<Complex>{Complex(c.ric_kk), c.ric_km, c.ric_mm,
                                        Complex(c.ric_mmbar)};
        },
        fd_deriv);
    const auto& g_kk = grads[0];
    const auto& g_km = grads[1];
    const auto& g_mm = grads[2];
    const auto& g_mmbar = grads[3];

    const CVec3 kc = to_complex(t.k);
    const Complex kap = sc.kappa, rho = sc.rho, sig = sc.sigma;
    const Complex eps = sc.epsilon, bet = sc.beta;
    const Complex kb = std::conj(kap), rb = std::conj(rho);
    const Complex sb = std::conj(sig), bb = std::conj(bet);
    const Complex ric_kmb = std::conj(tc.ric_km);
    const Complex ric_mbmb = std::conj(tc.ric_mm);

    std::array<double, 2> out{};
    {
        const Complex lhs = directional(g_km, kc) -
                            0.5 * directional(g_kk, t.m) +
                            directional(g_mm, t.mbar);
        const Complex rhs = kap * tc.ric_kk + (eps + 2.0 * rho + rb) * tc.ric_km +
                            sig * ric_kmb - (kb + 2.0 * bb) * tc.ric_mm -
                            kap * tc.ric_mmbar;
        out[0] = std::abs(lhs - rhs);
    }
    {
        const Complex lhs = directional(conj_grad(g_km), t.m) +
                            directional(g_km, t.mbar) -
                            directional(g_mmbar, kc) +
                            0.5 * directional(g_kk, kc);
        const Complex rhs = (rho + rb) * (tc.ric_kk - tc.ric_mmbar) -
                            sb * tc.ric_mm - sig * ric_mbmb -
                            (2.0 * kb + bb) * tc.ric_km -
                            (2.0 * kap + bet) * ric_kmb;
        out[1] = std::abs(lhs - rhs);
    }
    return out;
}

double check_ricci_triad_point(const MetricChart& chart,
                               const VectorFieldSpec& K, const ChartPoint& p,
                               const Vec3& slot_v, const Vec3& slot_w,
                               const FrameOptions& opts) {
    const FrameOptions locked = lock_frame(chart, K, p, opts);
    const Triad t = build_frame(chart, K, p, locked);
    const TriadCurvature tc = triad_curvature(chart, K, p, locked);
    const CurvatureData cd = curvature(chart, p);
    const MetricValues mv = metric_at(chart, p);

    double worst = 0.0;
    auto upd = [&worst](double r) { worst = std::max(worst, r); };
    upd(std::abs(tc.ric_mm + tc.R_kmkm));
    upd(std::abs(Complex(tc.ric_kk) + 2.0 * tc.R_kmkmbar));
    upd(std::abs(tc.ric_km + tc.R_kmmmbar));
    upd(std::abs(Complex(tc.ric_mmbar) -
                 (0.5 * tc.ric_kk - tc.R_mbarmmmbar)));

    // Trace display on the supplied slot vectors:
    // sum g^{ab} R(a,v,w,b) = R(k,v,w,k) + R(m,v,w,mbar) + R(mbar,v,w,m).
    const CVec3 vc = to_complex(slot_v), wc = to_complex(slot_w);
    Complex lhs = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (mv.g_inv[a][b] == 0.0) continue;
            Complex r = 0.0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    r += cd.Riem[a][k][l][b] * vc[k] * wc[l];
            lhs += mv.g_inv[a][b] * r;
        }
    const CVec3 kc = to_complex(t.k);
    const Complex rhs = riemann_contract(cd.Riem, kc, vc, wc, kc) +
                        riemann_contract(cd.Riem, t.m, vc, wc, t.mbar) +
                        riemann_contract(cd.Riem, t.mbar, vc, wc, t.m);
    upd(std::abs(lhs - rhs));
    return worst;
}

double check_riemann_frame_point(const MetricChart& chart,
                                 const VectorFieldSpec& K, const ChartPoint& p,
                                 double fd_deriv, const FrameOptions& opts) {
    const FrameOptions locked = lock_frame(chart, K, p, opts);
    const Triad t = build_frame(chart, K, p, locked);
    const CurvatureData cd = curvature(chart, p);

    auto frame_vec = [&chart, &K, locked](const ChartPoint& q, int which) {
        const Triad tq = build_frame(chart, K, q, locked);
        if (which == 0) return to_complex(tq.k);
        if (which == 1) return tq.m;
        return tq.mbar;
    };
    auto field_of = [&frame_vec](int which) {
        return CVectorField(
            [which, &frame_vec](const ChartPoint& q) { return frame_vec(q, which); });
    };

    const double h = chart.fd_step;
    const MetricValues mv = metric_at(chart, p);

    // (*) slot combinations: indices into {k, m, mbar}.
    const std::array<std::array<int, 4>, 4> combos = {
        std::array<int, 4>{0, 1, 0, 1}, std::array<int, 4>{0, 1, 0, 2},
        std::array<int, 4>{0, 1, 1, 2}, std::array<int, 4>{2, 1, 1, 2}};

    double worst = 0.0;
    for (const auto& c : combos) {
        const CVectorField fu = field_of(c[0]), fv = field_of(c[1]);
        const CVectorField fw = field_of(c[2]), fz = field_of(c[3]);
        const CVec3 u = fu(p), v = fv(p), w = fw(p), z = fz(p);

        // scalar fields <nabla_v w, z> and <nabla_u w, z>
        auto dot_field = [&](const CVectorField& dir_field,
                             const CVectorField& arg,
                             const CVectorField& against) {
            return ScalarFieldC([&, dir_field, arg, against](const ChartPoint& q) {
                const Mat3 gq = chart.g(q.u);
                return inner_c(gq,
                               covariant_derivative_c(chart, q, arg,
                                                      dir_field(q)),
                               against(q));
            });
        };
        const ScalarFieldC f_vw_z = dot_field(fv, fw, fz);
        const ScalarFieldC f_uw_z = dot_field(fu, fw, fz);

        const auto g1 = gradients(
            chart, p,
            [&](const ChartPoint& q) {
                return std::vector<Complex>{f_vw_z(q), f_uw_z(q)};
            },
            fd_deriv);

        const CVec3 Dvw = covariant_derivative_c(chart, p, fw, v);
        const CVec3 Duw = covariant_derivative_c(chart, p, fw, u);
        const CVec3 Duz = covariant_derivative_c(chart, p, fz, u);
        const CVec3 Dvz = covariant_derivative_c(chart, p, fz, v);

        const auto Ju = jacobian_c(chart, p, fu, h);
        const auto Jv = jacobian_c(chart, p, fv, h);
        const CVec3 uv = lie_bracket(u, Ju, v, Jv);
        const CVec3 Duvw = covariant_derivative_c(chart, p, fw, uv);

        const Complex frame_val = directional(g1[0], u) - inner_c(mv.g, Dvw, Duz) -
                                  directional(g1[1], v) + inner_c(mv.g, Duw, Dvz) -
                                  inner_c(mv.g, Duvw, z);
        const Complex coord_val = riemann_contract(cd.Riem, u, v, w, z);
        worst = std::max(worst, std::abs(frame_val - coord_val));
    }
    return worst;
}

std::vector<ChartPoint> sample_points(const MetricChart& chart,
                                      const std::array<Interval, 3>& box,
                                      int count, unsigned long long seed,
                                      double stencil_pad) {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    std::vector<ChartPoint> out;
    out.reserve(count);
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        Vec3 u{};
        for (int i = 0; i < 3; ++i)
            u[i] = box[i].lo + (box[i].hi - box[i].lo) * uniform();
        if (chart.inside(u, stencil_pad)) {
            out.push_back({chart.chart_id, u});
        } else if (++guard > 100 * count + 1000) {
            throw Error(ErrorCode::BadParameter,
                        "sampling box rejects nearly all points");
        }
    }
    return out;
}

std::vector<ResidualReport> run_identity_suite(
    const MetricChart& chart, const VectorFieldSpec& K,
    const std::vector<ChartPoint>& points, double tol, double fd_deriv,
    unsigned long long slot_seed) {
    std::map<std::string, ResidualReport> acc;
    auto record = [&](const std::string& id, const ChartPoint& p, double r) {
        auto& rep = acc[id];
        if (rep.equation_id.empty()) {
            rep.equation_id = id;
            rep.tol = tol;
        }
        rep.points += 1;
        rep.mean_residual += r;
        if (r >= rep.max_residual) {
            rep.max_residual = r;
            rep.worst_point = p;
        }
    };

    std::mt19937_64 rng(slot_seed);
    auto uniform = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    for (const auto& p : points) {
        record("cov_table", p, check_covariant_table_point(chart, K, p));
        record("brackets", p, check_brackets_point(chart, K, p));
        const auto sachs = check_sachs_point(chart, K, p, fd_deriv);
        for (int i = 0; i < 5; ++i)
            record("sachs" + std::to_string(i + 1), p, sachs[i]);
        const auto bid = check_bianchi_point(chart, K, p, fd_deriv);
        record("bianchi1", p, bid[0]);
        record("bianchi2", p, bid[1]);
        Vec3 sv{}, sw{};
        for (int i = 0; i < 3; ++i) {
            sv[i] = 2.0 * uniform() - 1.0;
            sw[i] = 2.0 * uniform() - 1.0;
        }
        record("ricci_star", p, check_ricci_triad_point(chart, K, p, sv, sw));
        record("riem_frame", p,
               check_riemann_frame_point(chart, K, p, fd_deriv));
    }

    std::vector<ResidualReport> out;
    for (auto& [id, rep] : acc) {
        rep.mean_residual /= std::max(1, rep.points);
        rep.pass = rep.max_residual < rep.tol;
        const Mat3 g = chart.g(rep.worst_point.u);
        double scale = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                scale = std::max(scale, std::abs(g[i][j]));
        rep.metric_scale = scale;
        out.push_back(rep);
    }
    return out;
}

}  // namespace np3
