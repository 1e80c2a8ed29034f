#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace bvtp {

using Complex = std::complex<double>;

/// Polynomial in x with ascending-degree coefficients.
struct Polynomial {
    std::vector<double> coefficients;

    double operator()(double x) const;
    /// Coefficients of p(x0 + t) as a polynomial in t.
    Polynomial shifted(double x0) const;
    std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

/// 2x4 interface coefficient matrix. Columns multiply
/// (u'(xi+), u(xi+), u'(xi-), u(xi-)); row1 holds the delta coefficients,
/// row2 the gamma coefficients.
struct TransmissionMatrix {
    std::array<double, 4> row1{};
    std::array<double, 4> row2{};
};

/// Determinant of columns j and k (1-based, j < k) of the matrix.
double theta_minor(const TransmissionMatrix& tm, int j, int k);

/// All six column-pair minors of one interface.
struct ThetaMinors {
    double t12 = 1, t13 = 1, t14 = 1, t23 = 1, t24 = 1, t34 = 1;

    static ThetaMinors of(const TransmissionMatrix& tm);
    double operator()(int j, int k) const;
};

/// Raw problem data as read from a file or built in code.
struct ProblemSpec {
    double a = 0;
    double b = 1;
    std::vector<double> xi;                   ///< n interior points
    std::vector<double> rho;                  ///< n+1 positive values; coefficient is rho^2
    std::vector<Polynomial> q;                ///< n+1 potentials
    std::array<double, 4> delta{};            ///< left boundary delta1..delta4
    std::array<double, 4> gamma{};            ///< right boundary gamma1..gamma4
    std::vector<TransmissionMatrix> trans;    ///< n interface matrices
};

/// Immutable, checked problem with derived minors, kappas and weights.
///
/// Pieces are indexed 0..n and interfaces 0..n-1 throughout the library;
/// interface i separates piece i from piece i+1.
class ValidatedProblem {
public:
    const ProblemSpec& spec() const { return spec_; }

    std::size_t interface_count() const { return spec_.xi.size(); }
    std::size_t piece_count() const { return spec_.xi.size() + 1; }

    double a() const { return spec_.a; }
    double b() const { return spec_.b; }
    double piece_lo(std::size_t piece) const;
    double piece_hi(std::size_t piece) const;
    double piece_mid(std::size_t piece) const { return 0.5 * (piece_lo(piece) + piece_hi(piece)); }
    double rho(std::size_t piece) const { return spec_.rho[piece]; }
    double rho2(std::size_t piece) const { return spec_.rho[piece] * spec_.rho[piece]; }
    const Polynomial& q(std::size_t piece) const { return spec_.q[piece]; }

    const ThetaMinors& theta(std::size_t interface) const { return theta_[interface]; }
    const TransmissionMatrix& transmission(std::size_t interface) const { return spec_.trans[interface]; }

    double kappa1() const { return kappa1_; }
    double kappa2() const { return kappa2_; }

    /// V_s for piece s: (1/rho_s^2) * prod_{i<s} theta_i12 * prod_{i>=s} theta_i34.
    double interval_weight(std::size_t piece) const { return weights_[piece]; }
    const std::vector<double>& interval_weights() const { return weights_; }

    /// prod_i theta_i34 (weight of the left boundary component).
    double left_boundary_weight() const { return left_boundary_weight_; }
    /// prod_i theta_i12 (weight of the right boundary component).
    double right_boundary_weight() const { return right_boundary_weight_; }

    /// Piece containing x; ties at an interface resolve to the left piece.
    std::size_t piece_of(double x) const;
    /// True if x coincides with an interior interface point.
    bool is_interface_point(double x, double rel_tol = 1e-14) const;

private:
    friend ValidatedProblem validate_problem(ProblemSpec spec);
    ValidatedProblem() = default;

    ProblemSpec spec_;
    std::vector<ThetaMinors> theta_;
    std::vector<double> weights_;
    double kappa1_ = 0;
    double kappa2_ = 0;
    double left_boundary_weight_ = 1;
    double right_boundary_weight_ = 1;
};

/// Checks the data model and precomputes theta minors, kappas and weights.
/// Throws bvtp::Error (NonIncreasingPartition, NonPositiveRho, ThetaDegenerate,
/// KappaNonPositive, ShapeMismatch, NonFiniteCoefficient).
ValidatedProblem validate_problem(ProblemSpec spec);

/// Canonical fixtures used by tests, documentation and the CLI samples.
namespace fixtures {

/// [0,1], no interfaces, rho=1, q=0, delta=gamma=(1,0,0,-1).
ProblemSpec p0();
/// P0 split at 0.5 with a continuity interface.
ProblemSpec p1();
/// [-1,1] split at 0, rho=(1,2), jump u(0+)=2u(0-), u'(0+)=u'(0-)/2.
ProblemSpec p2();

}  // namespace fixtures

}  // namespace bvtp
