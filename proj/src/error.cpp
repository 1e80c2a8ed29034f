#include "bvtp/error.hpp"

namespace bvtp {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonIncreasingPartition: return "NonIncreasingPartition";
        case ErrorCode::NonPositiveRho: return "NonPositiveRho";
        case ErrorCode::ThetaDegenerate: return "ThetaDegenerate";
        case ErrorCode::KappaNonPositive: return "KappaNonPositive";
        case ErrorCode::BadColumnPair: return "BadColumnPair";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NonFiniteCoefficient: return "NonFiniteCoefficient";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
        case ErrorCode::NonFiniteState: return "NonFiniteState";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::ConsistencyViolation: return "ConsistencyViolation";
        case ErrorCode::NoSignChange: return "NoSignChange";
        case ErrorCode::MaxIterations: return "MaxIterations";
        case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::InsufficientEigenvalues: return "InsufficientEigenvalues";
        case ErrorCode::NearEigenvalue: return "NearEigenvalue";
        case ErrorCode::InterfacePoint: return "InterfacePoint";
        case ErrorCode::SingularSystem: return "SingularSystem";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonIncreasingPartition:
        case ErrorCode::NonPositiveRho:
        case ErrorCode::ThetaDegenerate:
        case ErrorCode::KappaNonPositive:
        case ErrorCode::BadColumnPair:
        case ErrorCode::ShapeMismatch:
        case ErrorCode::NonFiniteCoefficient:
        case ErrorCode::ParseError:
        case ErrorCode::InvalidArgument:
        case ErrorCode::InterfacePoint:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorCode code, const std::string& message, std::optional<int> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), index_(index) {}

}  // namespace bvtp
