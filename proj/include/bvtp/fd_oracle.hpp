#pragma once

#include "bvtp/piecewise_function.hpp"
#include "bvtp/problem.hpp"

#include <Eigen/SparseCore>

#include <span>
#include <string>
#include <vector>

namespace bvtp {

/// Second-order finite-difference pencil A v = lambda B v for the full problem.
///
/// Every piece carries N intervals and N+1 nodes, so interface points appear
/// twice (once per side). Unknown (piece p, node j) sits at index p (N+1) + j.
/// Interior rows hold -rho^2 D^2 + q with B = 1; the rows at a and b hold the
/// lambda-free and lambda parts of the boundary conditions; at an interface the
/// delta row sits on the left copy and the gamma row on the right copy, both
/// with zero B rows. Boundary and interface slopes use one-sided 3-point stencils.
struct PencilPair {
    Eigen::SparseMatrix<double> A;
    Eigen::SparseMatrix<double> B;
    std::vector<std::vector<double>> grid;  ///< nodes per piece
    std::size_t intervals = 0;              ///< N
    std::size_t size = 0;

    std::size_t index(std::size_t piece, std::size_t node) const { return piece * (intervals + 1) + node; }
};

/// Throws InvalidArgument when intervals < 8.
PencilPair assemble_pencil(const ValidatedProblem& problem, std::size_t intervals);

struct PencilSpectrum {
    std::vector<double> eigenvalues;  ///< the smallest finite eigenvalues, ascending
    double max_imag = 0;              ///< largest |Im lambda| among them, relative to max(1, |lambda|)
};

/// Assembles the pencil with the given intervals per piece and returns its
/// smallest eigenvalues. Pencils up to kDenseLimit are solved with LAPACK dggev;
/// larger ones with shift-invert Arnoldi, the shift placed below the lowest
/// eigenvalue of a 32-interval pencil. Eigenvalues with beta = 0 or
/// |lambda| > 1e12 are dropped as infinite.
inline constexpr std::size_t kDenseLimit = 500;
PencilSpectrum pencil_eigenvalues(const ValidatedProblem& problem, std::size_t intervals, std::size_t count);
/// Dense path regardless of size.
PencilSpectrum pencil_eigenvalues_dense(const PencilPair& pencil, std::size_t count);
/// Arnoldi path with shift sigma (must lie below the wanted eigenvalues).
PencilSpectrum pencil_eigenvalues_arnoldi(const PencilPair& pencil, std::size_t count, double sigma);

struct OracleEigenvalue {
    double value = 0;           ///< Richardson-extrapolated eigenvalue
    double error_estimate = 0;  ///< bound on |value - exact| inferred from the resolution ladder
    std::vector<double> levels; ///< raw eigenvalue at every ladder resolution
    bool spurious = false;      ///< failed the stability filter
};

struct OracleSpectrum {
    std::vector<std::size_t> ladder;
    std::vector<OracleEigenvalue> eigenvalues;
    std::vector<std::string> warnings;
    double max_imag = 0;
};

/// Ladder (N, 2N).
OracleSpectrum oracle_eigenvalues(const ValidatedProblem& problem, std::size_t intervals, std::size_t count);
/// Ladder of at least two resolutions, each double the previous one.
/// Two levels: value = (4 l(2N) - l(N)) / 3, estimate |l(2N) - l(N)| / 3.
/// Three or more: value = the finest extrapolation R, estimate = |R - previous R|
/// (floored at 1e-9 max(1, |R|)). A root is flagged spurious when its finest
/// drift exceeds ten times the drift predicted by second order from the level
/// before (two levels: when the drift exceeds 10% of max(1, |lambda|)).
OracleSpectrum oracle_eigenvalues(const ValidatedProblem& problem, std::span<const std::size_t> ladder,
                                  std::size_t count);

struct GridFunction {
    std::vector<std::vector<double>> x;   ///< nodes per piece (interface nodes duplicated)
    std::vector<std::vector<Complex>> v;  ///< values per piece

    /// Largest |v - u| over all nodes of all pieces.
    double sup_distance(const PiecewiseFunction& u) const;
};

/// Solves (lambda B - A) v = f-hat, f-hat = f at interior rows and 0 in the
/// boundary and interface rows. Throws SingularSystem when the factorization fails.
GridFunction oracle_solve(const ValidatedProblem& problem, Complex lambda, const PiecewiseFunction& f,
                          std::size_t intervals);

}  // namespace bvtp
