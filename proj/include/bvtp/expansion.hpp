#pragma once

#include "bvtp/piecewise_function.hpp"
#include "bvtp/problem.hpp"
#include "bvtp/spectrum.hpp"

#include <span>
#include <vector>

namespace bvtp {

struct ExpansionResult {
    std::vector<Complex> coefficients;  ///< c_s = <F, Psi_s>, s = 1..N
    std::vector<double> eigenvalues;    ///< lambda_s of the basis elements used
    std::size_t truncation = 0;
    double l2_residual = 0;  ///< ||F - sum c_s Psi_s|| in the full product, by quadrature
};

struct ExpansionOptions {
    std::size_t grid = 2000;
    RootOptions roots{};
    EigenfunctionOptions eigenfunctions{};
    double quad_tol = 1e-12;
};

/// Normalized eigenfunctions for the first `count` eigenvalues of a spectrum.
std::vector<Eigenfunction> eigenbasis(const ValidatedProblem& problem, const Spectrum& spectrum, std::size_t count,
                                      const EigenfunctionOptions& options = {});

/// Expansion of F over basis[0..N). Throws InsufficientEigenvalues if the basis is shorter than N.
ExpansionResult expand(const ValidatedProblem& problem, const AugmentedFunction& F,
                       std::span<const Eigenfunction> basis, std::size_t N, double quad_tol = 1e-12);

/// Computes the spectrum on the window, the first N eigenfunctions and the expansion.
ExpansionResult expand(const ValidatedProblem& problem, const AugmentedFunction& F, std::size_t N, Window window,
                       const ExpansionOptions& options = {});

}  // namespace bvtp
