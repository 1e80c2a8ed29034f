#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bvtp {

enum class ErrorCode {
    // problem-core
    NonIncreasingPartition,
    NonPositiveRho,
    ThetaDegenerate,
    KappaNonPositive,
    BadColumnPair,
    ShapeMismatch,
    NonFiniteCoefficient,
    // problem file
    ParseError,
    InvalidArgument,
    // ivp-integrator
    StepSizeUnderflow,
    NonFiniteState,
    DomainMismatch,
    // fundamental-solutions
    ConsistencyViolation,
    // spectrum
    NoSignChange,
    MaxIterations,
    NotAnEigenvalue,
    // hilbert-space
    QuadratureFailure,
    InsufficientEigenvalues,
    // resolvent
    NearEigenvalue,
    InterfacePoint,
    // fd-oracle
    SingularSystem,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by malformed input rather than numerical breakdown.
bool is_input_error(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable code. `index` is a 1-based
/// interface/piece number when the failure can be localized.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<int> index = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    std::optional<int> index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::optional<int> index_;
};

}  // namespace bvtp
