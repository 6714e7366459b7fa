#pragma once

#include <optional>

#include "geometry.hpp"

namespace np3 {

struct VectorFieldSpec {
    std::string field_id;
    VectorField K;
    bool normalize = true;
};

// Unit field value at p (normalized when spec.normalize is set).
Vec3 unit_field_at(const MetricChart& chart, const VectorFieldSpec& spec,
                   const ChartPoint& p);

struct Triad {
    ChartPoint p;
    Vec3 k{}, x{}, y{};
    CVec3 m{}, mbar{};
    int seed_index = -1;  // coordinate index used to seed x
};

// Deterministic frame field: k from the unit field, x from the projection of
// the lowest coordinate basis vector whose g-angle with k clears 25 degrees,
// y the g-cross product making (k, x, y) positively oriented. A locked
// seed_index keeps the frame smooth across finite-difference stencils;
// theta applies the screen rotation m -> e^{i theta} m.
struct FrameOptions {
    std::optional<int> seed_index;
    double theta = 0.0;
};

Triad build_frame(const MetricChart& chart, const VectorFieldSpec& K,
                  const ChartPoint& p, const FrameOptions& opts = {});

struct SpinCoefficients {
    Complex kappa{}, rho{}, sigma{}, epsilon{}, beta{};
    double div = 0.0;
    double omega = 0.0;
    double shear_mag2 = 0.0;
};

SpinCoefficients spin_coefficients(const MetricChart& chart,
                                   const VectorFieldSpec& K,
                                   const ChartPoint& p,
                                   const FrameOptions& opts = {});

// The complex shear assembled from the real frame (screen-map form), used as
// the independent route to sigma.
Complex complex_shear_from_frame(const MetricChart& chart,
                                 const VectorFieldSpec& K, const ChartPoint& p,
                                 const FrameOptions& opts = {});

struct RotatedTriad {
    Triad triad;
    SpinCoefficients coeffs;
};

// Screen rotation by constant theta, with coefficients recomputed through the
// full pipeline on the rotated frame field.
RotatedTriad rotate_triad(const MetricChart& chart, const VectorFieldSpec& K,
                          const ChartPoint& p, double theta,
                          const FrameOptions& base = {});

// Kinematic scalars of the screen map only (no frame-field derivatives),
// cheap enough for per-step sampling along flows.
struct ScreenScalars {
    double div = 0.0;
    double omega = 0.0;
    double shear_mag2 = 0.0;
    Complex kappa{};
};

ScreenScalars screen_scalars(const MetricChart& chart,
                             const VectorFieldSpec& K, const ChartPoint& p,
                             const FrameOptions& opts = {});

struct FlowFlags {
    bool geodesic = false;
    bool divergence_free = false;
    bool shear_free = false;
    bool hypersurface_orthogonal = false;
    bool killing = false;
};

FlowFlags classify(const MetricChart& chart, const VectorFieldSpec& K,
                   const ChartPoint& p, double tol);

// max over frame pairs (v,w) of |<nabla_v k, w> + <v, nabla_w k>|.
double killing_residual(const MetricChart& chart, const VectorFieldSpec& K,
                        const ChartPoint& p);

}  // namespace np3
