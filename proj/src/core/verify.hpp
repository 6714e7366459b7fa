#pragma once

#include <vector>

#include "triad.hpp"

namespace np3 {

// Ricci and Riemann components in the complex triad basis.
struct TriadCurvature {
    double ric_kk = 0.0;
    Complex ric_mm{};
    Complex ric_km{};
    double ric_mmbar = 0.0;
    // Riemann contractions appearing in the trace identities.
    Complex R_kmkm{}, R_kmkmbar{}, R_kmmmbar{}, R_mbarmmmbar{};
};

TriadCurvature triad_curvature(const MetricChart& chart,
                               const VectorFieldSpec& K, const ChartPoint& p,
                               const FrameOptions& opts = {});

// Contraction of the coordinate Riemann tensor into four complex slot vectors.
Complex riemann_contract(const Arr4& Riem, const CVec3& a, const CVec3& b,
                         const CVec3& c, const CVec3& d);

enum class TriadDirection { k, m, mbar };

using ScalarFieldC = std::function<Complex(const ChartPoint&)>;

// Chart gradient of f by 4th-order central differences with step fd_deriv,
// contracted complex-linearly with the requested triad direction at p.
Complex frame_derivative(const MetricChart& chart, const VectorFieldSpec& K,
                         const ScalarFieldC& f, const ChartPoint& p,
                         TriadDirection dir, double fd_deriv = 1e-4,
                         const FrameOptions& opts = {});

struct ResidualReport {
    std::string equation_id;
    int points = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    ChartPoint worst_point;
    double metric_scale = 0.0;  // characteristic |g| magnitude at worst point
};

// Pointwise residuals. Each returns the max residual over the sub-equations
// it covers; the split variants expose the individual sub-residuals.

double check_covariant_table_point(const MetricChart& chart,
                                   const VectorFieldSpec& K,
                                   const ChartPoint& p,
                                   const FrameOptions& opts = {});

double check_brackets_point(const MetricChart& chart, const VectorFieldSpec& K,
                            const ChartPoint& p, const FrameOptions& opts = {});

std::array<double, 5> check_sachs_point(const MetricChart& chart,
                                        const VectorFieldSpec& K,
                                        const ChartPoint& p,
                                        double fd_deriv = 1e-4,
                                        const FrameOptions& opts = {});

std::array<double, 2> check_bianchi_point(const MetricChart& chart,
                                          const VectorFieldSpec& K,
                                          const ChartPoint& p,
                                          double fd_deriv = 1e-4,
                                          const FrameOptions& opts = {});

// The four (*) lines plus the first-last trace display on the given slot
// vectors.
double check_ricci_triad_point(const MetricChart& chart,
                               const VectorFieldSpec& K, const ChartPoint& p,
                               const Vec3& slot_v, const Vec3& slot_w,
                               const FrameOptions& opts = {});

// Frame expansion of the Riemann tensor (first-derivative form) against the
// coordinate tensor contracted into the triad, on the (*) slot combinations.
double check_riemann_frame_point(const MetricChart& chart,
                                 const VectorFieldSpec& K, const ChartPoint& p,
                                 double fd_deriv = 1e-4,
                                 const FrameOptions& opts = {});

// Deterministic sample points: uniform in box, rejecting points whose
// stencils (half-width stencil_pad) leave the chart margin.
std::vector<ChartPoint> sample_points(const MetricChart& chart,
                                      const std::array<Interval, 3>& box,
                                      int count, unsigned long long seed,
                                      double stencil_pad = 0.0);

// Runs the whole equation suite at the given points. Equation ids:
// cov_table, brackets, sachs1..sachs5, bianchi1, bianchi2, ricci_star,
// riem_frame.
std::vector<ResidualReport> run_identity_suite(
    const MetricChart& chart, const VectorFieldSpec& K,
    const std::vector<ChartPoint>& points, double tol,
    double fd_deriv = 1e-4, unsigned long long slot_seed = 42);

}  // namespace np3
