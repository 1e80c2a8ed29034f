#pragma once

#include "bvtp/fundamental.hpp"
#include "bvtp/piecewise_function.hpp"
#include "bvtp/problem.hpp"

#include <memory>

namespace bvtp {

/// Solves are refused when |omega(lambda)| < kNearEigenvalueFactor * max(1, |lambda|^2).
inline constexpr double kNearEigenvalueFactor = 1e-8;

struct GreensEvaluation {
    double x = 0;
    double y = 0;
    Complex lambda{};
    Complex value{};
    std::size_t piece_x = 0;
    std::size_t piece_y = 0;
};

/// Green's kernel at a fixed lambda. phi and chi are built once and shared by copies.
///   y <= x:  G = phi_s(y) chi_m(x) / (rho_s^2 omega_s)
///   x <= y:  G = phi_m(x) chi_s(y) / (rho_s^2 omega_s)
/// with m the piece of x and s the piece of y.
class GreenKernel {
public:
    /// Throws NearEigenvalue when lambda is too close to the spectrum.
    GreenKernel(const ValidatedProblem& problem, Complex lambda, double ivp_tol = 1e-12);

    Complex lambda() const { return lambda_; }
    const FundamentalSystem& system() const { return *system_; }
    const ValidatedProblem& problem() const { return problem_; }

    /// Throws InterfacePoint if x or y sits on an interface.
    GreensEvaluation operator()(double x, double y) const;
    /// Evaluation with explicit pieces; interface points are allowed and read one-sided values.
    Complex evaluate(std::size_t piece_x, double x, std::size_t piece_y, double y) const;

private:
    ValidatedProblem problem_;
    Complex lambda_;
    std::shared_ptr<const FundamentalSystem> system_;
};

/// One-off kernel value; see GreenKernel.
Complex greens(const ValidatedProblem& problem, Complex lambda, double x, double y, double ivp_tol = 1e-12);

struct ResolventOptions {
    double ivp_tol = 1e-12;
    double quad_tol = 1e-12;
    /// Interior check points per piece for the differential-equation residual.
    std::size_t check_points = 100;
};

struct ResolventSolution {
    Complex lambda{};
    PiecewiseFunction u;        ///< value and slope on every piece
    double f_sup = 0;           ///< max |f| over the check points
    double residual_ode = 0;    ///< max |lambda u + rho^2 u'' - q u - f| / f_sup, u'' by 5-point differences
    double residual_bc = 0;     ///< larger of the two boundary conditions, relative to their terms
    double residual_trans = 0;  ///< largest interface functional, relative to the one-sided data
};

/// Variation-of-parameters solution of lambda u + rho^2 u'' - q u = f with both
/// lambda-dependent boundary conditions and all transmission conditions.
ResolventSolution solve_resolvent(const ValidatedProblem& problem, Complex lambda, const PiecewiseFunction& f,
                                  const ResolventOptions& options = {});

/// |<R f, g> - <f, R g>| / (||f|| ||g||) in the weighted L2 product, R the resolvent at real lambda.
double resolvent_selfadjointness_check(const ValidatedProblem& problem, double lambda, const PiecewiseFunction& f,
                                       const PiecewiseFunction& g, const ResolventOptions& options = {});

}  // namespace bvtp
