#pragma once

#include "bvtp/problem.hpp"

#include <functional>
#include <vector>

namespace bvtp {

inline constexpr double kDefaultQuadTolerance = 1e-9;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule of the given order (number of nodes).
const GaussRule& gauss_legendre(int order);

struct QuadratureResult {
    Complex value{};
    double error_estimate = 0;
    std::size_t panels = 0;
};

using ScalarFunction = std::function<Complex(double)>;

/// Composite fixed-order Gauss rule on [lo, hi]. Every panel is halved until
/// two successive sums differ by less than tol * max(1, |sum|).
/// Throws QuadratureFailure after the refinement limit.
QuadratureResult integrate(const ScalarFunction& f, double lo, double hi, double tol = kDefaultQuadTolerance,
                           std::size_t initial_panels = 8);

/// Running integral x -> int_lo^x f on a converged panel set. Values at panel
/// breakpoints are prefix sums; inside a panel the remainder is integrated
/// with the same Gauss rule on the partial panel.
class CumulativeIntegral {
public:
    CumulativeIntegral(ScalarFunction f, double lo, double hi, double tol = kDefaultQuadTolerance);

    Complex from_lo(double x) const;
    Complex to_hi(double x) const { return total_ - from_lo(x); }
    Complex total() const { return total_; }
    double error_estimate() const { return error_; }

private:
    ScalarFunction f_;
    double lo_;
    double hi_;
    double width_;
    std::vector<Complex> prefix_;
    Complex total_{};
    double error_ = 0;
};

}  // namespace bvtp
