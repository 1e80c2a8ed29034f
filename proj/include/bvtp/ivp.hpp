#pragma once

#include "bvtp/problem.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bvtp {

/// Value and first derivative of a solution at one point.
struct ValuePair {
    Complex u{};
    Complex du{};
};

enum class StartPoint { Left, Right };

inline constexpr double kDefaultIvpTolerance = 1e-10;

/// Dense-output solution of -rho^2 u'' + q u = lambda u on one piece.
///
/// Each mesh step stores the truncated Taylor expansion of u about the point
/// the step was taken from; values between nodes come from that polynomial
/// and its derivative. Evaluation at a mesh node returns the stored node value.
class SolutionTrace {
public:
    double x_lo() const { return nodes_.front(); }
    double x_hi() const { return nodes_.back(); }
    std::size_t piece() const { return piece_; }
    StartPoint start() const { return start_; }
    Complex lambda() const { return lambda_; }
    double tolerance() const { return tol_; }

    /// Ascending mesh points, x_lo() first.
    std::span<const double> nodes() const { return nodes_; }
    const ValuePair& node_value(std::size_t k) const { return node_values_[k]; }
    std::size_t step_count() const { return steps_.size(); }

    /// Solution at x in [x_lo, x_hi]; throws DomainMismatch outside.
    ValuePair operator()(double x) const;

    const ValuePair& at_lo() const { return node_values_.front(); }
    const ValuePair& at_hi() const { return node_values_.back(); }

private:
    friend SolutionTrace integrate_ivp(const ValidatedProblem&, std::size_t, Complex, StartPoint, ValuePair, double);

    struct Step {
        double x0 = 0;                     ///< expansion point (step start in integration order)
        std::vector<Complex> coeffs;       ///< Taylor coefficients of u in (x - x0)
    };

    std::vector<double> nodes_;
    std::vector<ValuePair> node_values_;
    std::vector<Step> steps_;             ///< steps_[k] covers [nodes_[k], nodes_[k+1]]
    std::size_t piece_ = 0;
    StartPoint start_ = StartPoint::Left;
    Complex lambda_{};
    double tol_ = kDefaultIvpTolerance;
};

/// Integrates the equation on piece `piece` from the selected endpoint with
/// initial data `init` over the full closed piece. The step control bounds
/// the truncation error per unit length by tol relative to the local solution
/// scale. Throws StepSizeUnderflow or NonFiniteState.
SolutionTrace integrate_ivp(const ValidatedProblem& problem, std::size_t piece, Complex lambda, StartPoint start,
                            ValuePair init, double tol = kDefaultIvpTolerance);

/// u1 u2' - u1' u2 at x. Both traces must share piece, lambda and interval.
Complex wronskian_at(const SolutionTrace& t1, const SolutionTrace& t2, double x);

/// Wronskian of two value pairs taken at the same point.
inline Complex wronskian(const ValuePair& f, const ValuePair& g) { return f.u * g.du - f.du * g.u; }

}  // namespace bvtp
