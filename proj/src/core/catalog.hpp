#pragma once

#include <map>
#include <vector>

#include "triad.hpp"

namespace np3 {

struct ExpectedValue {
    std::string field_id;
    std::string quantity;
    double value = 0.0;
    double tol = 1e-8;
    std::string note;  // which oracle fixed the value
};

struct CatalogEntry {
    std::string manifold_id;
    MetricChart chart;
    std::map<std::string, VectorFieldSpec> fields;
    std::vector<ExpectedValue> expected;
    std::array<Interval, 3> sample_box{};
    int default_sample_count = 100;
    double flow_length = 1.0;
    ChartPoint default_point;
    std::string description;

    const VectorFieldSpec& field(const std::string& field_id) const;
};

struct CatalogParams {
    double r = 1.0;       // s3_round radius
    double lambda = 0.8;  // berger squashing
};

// manifold_id in {euclidean, s3_round, h3, h2xr, nil, berger}.
CatalogEntry load(const std::string& manifold_id,
                  const CatalogParams& params = {});

std::vector<std::string> catalog_ids();

// Declarative chart: JSON with chart_id, domain, optional margin/fd_step,
// g as a 3x3 table of expression strings, optional fields as 3-vectors of
// expression strings. Partials of g come from finite differences.
CatalogEntry load_custom(const std::string& json_text);

}  // namespace np3
