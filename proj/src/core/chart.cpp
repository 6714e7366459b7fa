#include "chart.hpp"

#include <sstream>

namespace np3 {

void MetricChart::require_inside(const Vec3& u) const {
    if (!inside(u)) {
        std::ostringstream os;
        os << "point (" << u[0] << ", " << u[1] << ", " << u[2]
           << ") outside chart '" << chart_id << "' (margin " << margin << ")";
        throw Error(ErrorCode::PointOutsideChart, os.str());
    }
}

void MetricChart::require_stencil(const Vec3& u, double step) const {
    // 4th-order central differences reach 2*step along each axis.
    if (!inside(u, 2.0 * step)) {
        std::ostringstream os;
        os << "finite-difference stencil (half-width " << 2.0 * step
           << ") around (" << u[0] << ", " << u[1] << ", " << u[2]
           << ") leaves chart '" << chart_id << "'";
        throw Error(ErrorCode::StencilLeavesChart, os.str());
    }
}

MetricValues metric_at(const MetricChart& chart, const ChartPoint& p) {
    chart.require_inside(p.u);
    MetricValues mv;
    mv.g = chart.g(p.u);
    const auto ev = sym_eigenvalues(mv.g);
    if (ev[0] <= 0.0) {
        std::ostringstream os;
        os << "metric not positive definite at (" << p.u[0] << ", " << p.u[1]
           << ", " << p.u[2] << "): smallest eigenvalue " << ev[0];
        throw Error(ErrorCode::MetricNotPositiveDefinite, os.str());
    }
    const double det = det3(mv.g);
    mv.g_inv = inverse3(mv.g, det);
    mv.sqrt_det = std::sqrt(det);
    return mv;
}

Arr3 metric_partials(const MetricChart& chart, const Vec3& u) {
    if (chart.dg) return chart.dg(u);
    chart.require_stencil(u, chart.fd_step);
    const double h = chart.fd_step;
    Arr3 out{};
    for (int k = 0; k < 3; ++k) {
        Vec3 up2 = u, up1 = u, um1 = u, um2 = u;
        up2[k] += 2.0 * h;
        up1[k] += h;
        um1[k] -= h;
        um2[k] -= 2.0 * h;
        const Mat3 gp2 = chart.g(up2), gp1 = chart.g(up1);
        const Mat3 gm1 = chart.g(um1), gm2 = chart.g(um2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                out[k][i][j] = (-gp2[i][j] + 8.0 * gp1[i][j] - 8.0 * gm1[i][j] +
                                gm2[i][j]) /
                               (12.0 * h);
    }
    return out;
}

}  // namespace np3
