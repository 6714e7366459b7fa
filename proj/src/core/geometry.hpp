#pragma once

#include <vector>

#include "chart.hpp"

namespace np3 {

// Christoffel symbols Gamma[k][i][j] = Gamma^k_ij.
Arr3 christoffel(const MetricChart& chart, const ChartPoint& p);

struct CurvatureData {
    Arr3 Gamma{};
    Arr4 Riem{};  // R_ijkl, all indices lowered
    Mat3 Ric{};
    double S = 0.0;
};

// Riemann tensor with the convention R_ijkl = <R(e_i,e_j)e_k, e_l>,
// R(u,v)w = nabla_u nabla_v w - nabla_v nabla_u w - nabla_[u,v] w, and
// Ric_jk = g^al R_ajkl. Calibrated so the unit round 3-sphere has S = +6.
CurvatureData curvature(const MetricChart& chart, const ChartPoint& p);

using VectorField = std::function<Vec3(const ChartPoint&)>;
using CVectorField = std::function<CVec3(const ChartPoint&)>;

// nabla_w V at p; V sampled on a 4th-order central-difference stencil.
Vec3 covariant_derivative(const MetricChart& chart, const ChartPoint& p,
                          const VectorField& V, const Vec3& w);

// Complex-linear extension: complex field, complex direction.
CVec3 covariant_derivative_c(const MetricChart& chart, const ChartPoint& p,
                             const CVectorField& V, const CVec3& w);

struct GeoSample {
    double t = 0.0;
    ChartPoint p;
    Vec3 v{};
};

// Classical RK4 on the geodesic equation with uniform step.
std::vector<GeoSample> geodesic_integrate(const MetricChart& chart,
                                          const ChartPoint& p0, const Vec3& v0,
                                          double length, double step);

}  // namespace np3
