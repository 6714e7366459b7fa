#pragma once

#include <optional>
#include <vector>

#include "verify.hpp"

namespace np3 {

struct FlowSample {
    double t = 0.0;
    ChartPoint p;
    Vec3 v{};  // unit tangent
    double div_direct = 0.0;
    double div_transported = 0.0;
    double omega_direct = 0.0;
    double omega_transported = 0.0;
    double shear_mag2 = 0.0;
    double S = 0.0;
};

// Integrates the geodesic from p0 and, alongside it, the first-order
// evolution of (div, omega) with |sigma|^2 and Ric(k,k) sampled directly at
// the integrator stage points. Direct pipeline evaluations are recorded at
// every output step for comparison.
std::vector<FlowSample> transport_kinematics(const MetricChart& chart,
                                             const VectorFieldSpec& K,
                                             const ChartPoint& p0,
                                             double length, double step);

struct OmegaRigidityReport {
    double omega_min_abs = 0.0;
    double omega_max_abs = 0.0;
    int sign_changes = 0;
    double length = 0.0;
};

OmegaRigidityReport omega_rigidity(const MetricChart& chart,
                                   const VectorFieldSpec& K,
                                   const ChartPoint& p0, double length,
                                   double step);

struct FocusingReport {
    std::optional<double> predicted_blowup_t;
    std::optional<double> threshold_crossing_t;  // first t with div <= -1e3
    double min_div = 0.0;
    bool comparison_bound_holds = true;  // div <= comparison solution
    double length = 0.0;
};

// Requires Ric(k,k) >= 0 and |omega| < tol along the sampled curve.
FocusingReport focusing_check(const MetricChart& chart,
                              const VectorFieldSpec& K, const ChartPoint& p0,
                              double length, double step, double tol = 1e-6);

struct PrincipalReport {
    double sup_Rk = 0.0;
    double kappaS_residual = 0.0;
    double shear_omega_residual = 0.0;
    double scalar_evolution_residual = 0.0;
    double S = 0.0;
    bool nonflat = false;
    bool two_principal = false;
};

PrincipalReport principal_check(const MetricChart& chart,
                                const VectorFieldSpec& K, const ChartPoint& p,
                                double tol = 1e-7, double fd_deriv = 1e-4);

struct GSPointResult {
    ChartPoint p;
    bool two_principal = false;
    bool killing = false;
    double sup_Rk = 0.0;
    double killing_residual = 0.0;
};

struct GSReport {
    std::vector<GSPointResult> points;
    bool biconditional_holds = false;
    double S_mean = 0.0;
};

// Corollary-style biconditional on samples: requires constant nonzero S and
// hypersurface-orthogonality at every sample; then checks
// (2-principal <=> Killing) pointwise.
GSReport goldberg_sachs_check(const MetricChart& chart,
                              const VectorFieldSpec& K,
                              const std::vector<ChartPoint>& samples,
                              double tol);

}  // namespace np3
