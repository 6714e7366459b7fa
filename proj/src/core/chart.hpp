#pragma once

#include <functional>
#include <optional>
#include <string>

#include "errors.hpp"
#include "linalg.hpp"

namespace np3 {

struct ChartPoint {
    std::string chart_id;
    Vec3 u{};
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// One coordinate chart with its metric. The metric function must return a
// symmetric positive-definite matrix everywhere inside the domain box; dg,
// when present, holds the analytic partials dg[k][i][j] = d g_ij / d u^k.
struct MetricChart {
    std::string chart_id;
    std::array<Interval, 3> domain{};
    double margin = 1e-2;
    std::function<Mat3(const Vec3&)> g;
    std::function<Arr3(const Vec3&)> dg;  // may be null
    double fd_step = 1e-4;

    bool inside(const Vec3& u, double extra = 0.0) const {
        for (int i = 0; i < 3; ++i) {
            if (u[i] < domain[i].lo + margin + extra ||
                u[i] > domain[i].hi - margin - extra)
                return false;
        }
        return true;
    }

    void require_inside(const Vec3& u) const;
    void require_stencil(const Vec3& u, double step) const;
};

struct MetricValues {
    Mat3 g;
    Mat3 g_inv;
    double sqrt_det = 0.0;
};

MetricValues metric_at(const MetricChart& chart, const ChartPoint& p);

// Partial derivatives dg[k][i][j] of the metric, analytic when available,
// otherwise 4th-order central differences with chart.fd_step.
Arr3 metric_partials(const MetricChart& chart, const Vec3& u);

}  // namespace np3
