#pragma once

#include "bvtp/fundamental.hpp"
#include "bvtp/piecewise_function.hpp"
#include "bvtp/problem.hpp"
#include "bvtp/quadrature.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace bvtp {

struct Window {
    double lo = 0;
    double hi = 0;
};

struct CharacteristicSample {
    double lambda = 0;
    double omega = 0;
};

/// omega on count uniformly spaced real lambdas covering the window (both ends included).
/// Throws ConsistencyViolation if omega has a relative imaginary part above 1e-10.
std::vector<CharacteristicSample> sample_characteristic(const ValidatedProblem& problem, Window window,
                                                        std::size_t count, double tol = 1e-12);

struct Bracket {
    double lo = 0;
    double hi = 0;
    double omega_lo = 0;
    double omega_hi = 0;

    bool degenerate() const { return lo == hi; }
};

/// One bracket per sign change between consecutive samples. A sample that is
/// exactly zero yields a degenerate bracket and absorbs both neighbouring intervals.
std::vector<Bracket> bracket_roots(std::span<const CharacteristicSample> samples);

struct RootOptions {
    double ivp_tol = 1e-12;
    /// Final bracket width must be below lambda_tol * max(1, |lambda|).
    double lambda_tol = 1e-11;
    /// |omega| at the root must be below omega_tol * max(|omega_lo|, |omega_hi|).
    double omega_tol = 1e-6;
    int max_iterations = 200;
};

struct RefinedRoot {
    double lambda = 0;
    double abs_omega = 0;
    Bracket bracket;
    int iterations = 0;
};

/// Brent's method (inverse quadratic or secant step, bisection fallback) on omega.
/// Throws NoSignChange when a non-degenerate bracket has equal end signs and
/// MaxIterations when the tolerances cannot be met.
RefinedRoot refine_root(const ValidatedProblem& problem, const Bracket& bracket, const RootOptions& options = {});

struct Spectrum {
    std::vector<double> eigenvalues;
    std::vector<RefinedRoot> roots;  ///< diagnostics, one per eigenvalue
    Window window;
    std::size_t grid_points = 0;
    std::vector<std::string> warnings;
};

/// Sample, bracket and refine. Roots closer than the lambda tolerance are merged;
/// roots closer than 100 times it are reported in warnings.
Spectrum eigenvalues(const ValidatedProblem& problem, Window window, std::size_t grid,
                     const RootOptions& options = {});

struct Eigenfunction {
    double lambda = 0;
    AugmentedFunction psi;  ///< unit norm, f1 = B'a[f], f2 = -B'b[f]
    std::shared_ptr<const PiecewiseSolution> phi;
    Complex scale{};             ///< psi.f = scale * phi
    double right_residual = 0;   ///< right boundary condition on phi, relative to its terms at the sizes of phi, phi' on the last piece
};

struct EigenfunctionOptions {
    double ivp_tol = 1e-12;
    double quad_tol = 1e-11;
    double residual_tol = 1e-6;
    /// Samples per piece used to locate the maximum for the phase rule.
    std::size_t phase_samples = 257;
};

/// Normalized eigenfunction built from phi(., lambda_k). The phase is fixed so
/// that the first sample (uniform grid per piece, left to right) where |f|
/// is largest carries a positive real value. Throws NotAnEigenvalue when the
/// right boundary condition is violated by more than residual_tol.
Eigenfunction eigenfunction(const ValidatedProblem& problem, double lambda_k, const EigenfunctionOptions& options = {});

}  // namespace bvtp
