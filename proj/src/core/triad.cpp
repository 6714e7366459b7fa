#include "triad.hpp"

#include <cmath>
#include <sstream>

namespace np3 {

namespace {

constexpr double kSeedAngleCos = 0.9063077870366499;  // cos(25 deg)

const Complex kI(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

Vec3 unit_field_at(const MetricChart& chart, const VectorFieldSpec& spec,
                   const ChartPoint& p) {
    const Vec3 raw = spec.K(p);
    const MetricValues mv = metric_at(chart, p);
    const double n = std::sqrt(inner(mv.g, raw, raw));
    if (n < 1e-14)
        throw Error(ErrorCode::ZeroField,
                    "vector field '" + spec.field_id + "' vanishes");
    if (!spec.normalize && std::abs(n - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "field '" << spec.field_id
           << "' declared unit but |K|_g = " << n;
        throw Error(ErrorCode::FieldNotUnit, os.str());
    }
    return (1.0 / n) * raw;
}

Triad build_frame(const MetricChart& chart, const VectorFieldSpec& K,
                  const ChartPoint& p, const FrameOptions& opts) {
    const MetricValues mv = metric_at(chart, p);
    Triad t;
    t.p = p;
    t.k = unit_field_at(chart, K, p);

    int seed = -1;
    if (opts.seed_index) {
        seed = *opts.seed_index;
    } else {
        for (int a = 0; a < 3; ++a) {
            Vec3 ea{};
            ea[a] = 1.0;
            const double c =
                inner(mv.g, ea, t.k) / std::sqrt(mv.g[a][a]);
            if (std::abs(c) < kSeedAngleCos) {
                seed = a;
                break;
            }
        }
        if (seed < 0)
            throw Error(ErrorCode::FrameSeedDegenerate,
                        "no coordinate basis vector clears the seed angle");
    }
    t.seed_index = seed;

    Vec3 ea{};
    ea[seed] = 1.0;
    const double proj = inner(mv.g, ea, t.k);
    Vec3 x = ea - proj * t.k;
    const double xn = std::sqrt(inner(mv.g, x, x));
    if (xn < 1e-12)
        throw Error(ErrorCode::FrameSeedDegenerate,
                    "seed vector parallel to the field");
    x = (1.0 / xn) * x;

    // y^i = g^{il} sqrt(det g) eps_{ljm} k^j x^m
    Vec3 ylow{};
    ylow[0] = mv.sqrt_det * (t.k[1] * x[2] - t.k[2] * x[1]);
    ylow[1] = mv.sqrt_det * (t.k[2] * x[0] - t.k[0] * x[2]);
    ylow[2] = mv.sqrt_det * (t.k[0] * x[1] - t.k[1] * x[0]);
    Vec3 y{};
    for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 3; ++l) y[i] += mv.g_inv[i][l] * ylow[l];

    if (opts.theta != 0.0) {
        const double c = std::cos(opts.theta), s = std::sin(opts.theta);
        const Vec3 xr = {c * x[0] + s * y[0], c * x[1] + s * y[1],
                         c * x[2] + s * y[2]};
        const Vec3 yr = {c * y[0] - s * x[0], c * y[1] - s * x[1],
                         c * y[2] - s * x[2]};
        x = xr;
        y = yr;
    }

    t.x = x;
    t.y = y;
    for (int i = 0; i < 3; ++i) {
        t.m[i] = kInvSqrt2 * Complex(x[i], -y[i]);
        t.mbar[i] = kInvSqrt2 * Complex(x[i], y[i]);
    }
    return t;
}

namespace {

// Screen-map entries A_vw = <nabla_v k, w> plus nabla_k k against the frame.
struct ScreenData {
    Triad t;
    Mat3 g{};
    Vec3 Dk{}, Dx{}, Dy{};  // nabla_k k, nabla_x k, nabla_y k
};

ScreenData screen_data(const MetricChart& chart, const VectorFieldSpec& K,
                       const ChartPoint& p, const FrameOptions& opts) {
    ScreenData sd;
    sd.t = build_frame(chart, K, p, opts);
    sd.g = metric_at(chart, p).g;
    const VectorField kf = [&chart, &K](const ChartPoint& q) {
        return unit_field_at(chart, K, q);
    };
    sd.Dk = covariant_derivative(chart, p, kf, sd.t.k);
    sd.Dx = covariant_derivative(chart, p, kf, sd.t.x);
    sd.Dy = covariant_derivative(chart, p, kf, sd.t.y);
    return sd;
}

}  // namespace

SpinCoefficients spin_coefficients(const MetricChart& chart,
                                   const VectorFieldSpec& K,
                                   const ChartPoint& p,
                                   const FrameOptions& opts) {
    const ScreenData sd = screen_data(chart, K, p, opts);
    const Triad& t = sd.t;
    const Mat3& g = sd.g;

    const CVec3 Dk = to_complex(sd.Dk);
    CVec3 Dm{}, Dmbar{};  // nabla_m k, nabla_mbar k
    for (int i = 0; i < 3; ++i) {
        Dm[i] = kInvSqrt2 * Complex(sd.Dx[i], -sd.Dy[i]);
        Dmbar[i] = kInvSqrt2 * Complex(sd.Dx[i], sd.Dy[i]);
    }

    SpinCoefficients sc;
    sc.kappa = -inner_c(g, Dk, t.m);
    sc.rho = -inner_c(g, Dmbar, t.m);
    sc.sigma = -inner_c(g, Dm, t.m);

    sc.div = inner(g, sd.Dx, t.x) + inner(g, sd.Dy, t.y);
    sc.omega = inner(g, sd.Dy, t.x) - inner(g, sd.Dx, t.y);
    sc.shear_mag2 = std::norm(sc.sigma);

    // epsilon and beta differentiate the frame field itself.
    FrameOptions locked = opts;
    locked.seed_index = t.seed_index;
    const CVectorField mf = [&chart, &K, locked](const ChartPoint& q) {
        return build_frame(chart, K, q, locked).m;
    };
    const CVec3 DkM = covariant_derivative_c(chart, p, mf, to_complex(t.k));
    const CVec3 DmM = covariant_derivative_c(chart, p, mf, t.m);
    sc.epsilon = inner_c(g, DkM, t.mbar);
    sc.beta = inner_c(g, DmM, t.mbar);
    return sc;
}

Complex complex_shear_from_frame(const MetricChart& chart,
                                 const VectorFieldSpec& K, const ChartPoint& p,
                                 const FrameOptions& opts) {
    const ScreenData sd = screen_data(chart, K, p, opts);
    const double axx = inner(sd.g, sd.Dx, sd.t.x);
    const double ayy = inner(sd.g, sd.Dy, sd.t.y);
    const double axy = inner(sd.g, sd.Dx, sd.t.y);
    const double ayx = inner(sd.g, sd.Dy, sd.t.x);
    return Complex(0.5 * (ayy - axx), 0.5 * (ayx + axy));
}

ScreenScalars screen_scalars(const MetricChart& chart,
                             const VectorFieldSpec& K, const ChartPoint& p,
                             const FrameOptions& opts) {
    const ScreenData sd = screen_data(chart, K, p, opts);
    const double axx = inner(sd.g, sd.Dx, sd.t.x);
    const double ayy = inner(sd.g, sd.Dy, sd.t.y);
    const double axy = inner(sd.g, sd.Dx, sd.t.y);
    const double ayx = inner(sd.g, sd.Dy, sd.t.x);
    ScreenScalars s;
    s.div = axx + ayy;
    s.omega = ayx - axy;
    const Complex sig(0.5 * (ayy - axx), 0.5 * (ayx + axy));
    s.shear_mag2 = std::norm(sig);
    const CVec3 Dk = to_complex(sd.Dk);
    s.kappa = -inner_c(sd.g, Dk, sd.t.m);
    return s;
}

RotatedTriad rotate_triad(const MetricChart& chart, const VectorFieldSpec& K,
                          const ChartPoint& p, double theta,
                          const FrameOptions& base) {
    FrameOptions opts = base;
    if (!opts.seed_index)
        opts.seed_index = build_frame(chart, K, p, base).seed_index;
    opts.theta = base.theta + theta;
    RotatedTriad out;
    out.triad = build_frame(chart, K, p, opts);
    out.coeffs = spin_coefficients(chart, K, p, opts);
    return out;
}

FlowFlags classify(const MetricChart& chart, const VectorFieldSpec& K,
                   const ChartPoint& p, double tol) {
    if (tol <= 0.0)
        throw Error(ErrorCode::BadParameter, "classification tol must be > 0");
    const SpinCoefficients sc = spin_coefficients(chart, K, p);
    FlowFlags f;
    f.geodesic = std::abs(sc.kappa) < tol;
    f.divergence_free = std::abs(sc.div) < tol;
    f.shear_free = std::abs(sc.sigma) < tol;
    f.hypersurface_orthogonal = std::abs(sc.omega) < tol;
    f.killing = f.geodesic && f.divergence_free && f.shear_free;
    return f;
}

double killing_residual(const MetricChart& chart, const VectorFieldSpec& K,
                        const ChartPoint& p) {
    const ScreenData sd = screen_data(chart, K, p, {});
    const std::array<Vec3, 3> frame = {sd.t.k, sd.t.x, sd.t.y};
    const std::array<Vec3, 3> deriv = {sd.Dk, sd.Dx, sd.Dy};
    double worst = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const double r =
                inner(sd.g, deriv[a], frame[b]) + inner(sd.g, frame[a], deriv[b]);
            worst = std::max(worst, std::abs(r));
        }
    return worst;
}

}  // namespace np3
