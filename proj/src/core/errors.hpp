#pragma once

#include <stdexcept>
#include <string>

namespace np3 {

enum class ErrorCode {
    PointOutsideChart,
    MetricNotPositiveDefinite,
    StencilLeavesChart,
    LeftChartDomain,
    StepNotPositive,
    ZeroField,
    FieldNotUnit,
    FrameSeedDegenerate,
    NotGeodesicField,
    HypothesesViolated,
    UnknownManifold,
    BadParameter,
    BadConfig,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string msg)
        : std::runtime_error(std::move(msg)), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::PointOutsideChart: return "PointOutsideChart";
        case ErrorCode::MetricNotPositiveDefinite: return "MetricNotPositiveDefinite";
        case ErrorCode::StencilLeavesChart: return "StencilLeavesChart";
        case ErrorCode::LeftChartDomain: return "LeftChartDomain";
        case ErrorCode::StepNotPositive: return "StepNotPositive";
        case ErrorCode::ZeroField: return "ZeroField";
        case ErrorCode::FieldNotUnit: return "FieldNotUnit";
        case ErrorCode::FrameSeedDegenerate: return "FrameSeedDegenerate";
        case ErrorCode::NotGeodesicField: return "NotGeodesicField";
        case ErrorCode::HypothesesViolated: return "HypothesesViolated";
        case ErrorCode::UnknownManifold: return "UnknownManifold";
        case ErrorCode::BadParameter: return "BadParameter";
        case ErrorCode::BadConfig: return "BadConfig";
    }
    return "Unknown";
}

}  // namespace np3
