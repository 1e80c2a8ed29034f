#pragma once

#include "bvtp/ivp.hpp"
#include "bvtp/problem.hpp"

#include <vector>

namespace bvtp {

enum class SolutionKind { Phi, Chi };

/// One-sided values stored at an interface when a solution was built.
struct InterfaceValues {
    ValuePair minus;  ///< at xi_i-
    ValuePair plus;   ///< at xi_i+
};

/// phi (built left to right) or chi (built right to left) across all pieces.
class PiecewiseSolution {
public:
    PiecewiseSolution(SolutionKind kind, Complex lambda, std::vector<SolutionTrace> pieces,
                      std::vector<InterfaceValues> interfaces);

    SolutionKind kind() const { return kind_; }
    Complex lambda() const { return lambda_; }
    std::size_t piece_count() const { return pieces_.size(); }
    const SolutionTrace& piece(std::size_t s) const { return pieces_[s]; }
    const InterfaceValues& interface_values(std::size_t i) const { return interfaces_[i]; }

    /// Value on a given piece (needed at interfaces, where the function is two-valued).
    ValuePair operator()(std::size_t piece, double x) const { return pieces_[piece](x); }

    const ValuePair& at_a() const { return pieces_.front().at_lo(); }
    const ValuePair& at_b() const { return pieces_.back().at_hi(); }

private:
    SolutionKind kind_;
    Complex lambda_;
    std::vector<SolutionTrace> pieces_;
    std::vector<InterfaceValues> interfaces_;
};

/// Maps (u, u') at xi_i- to the values at xi_i+ enforced by the interface conditions.
ValuePair transmit_forward(const ValidatedProblem& problem, std::size_t interface, ValuePair left);
/// Inverse of transmit_forward.
ValuePair transmit_backward(const ValidatedProblem& problem, std::size_t interface, ValuePair right);

/// The two interface functionals (delta row, gamma row) evaluated on one-sided data.
struct TransmissionResidual {
    Complex first;   ///< delta-row functional
    Complex second;  ///< gamma-row functional
    double scale;    ///< largest magnitude among the four one-sided values
};
TransmissionResidual transmission_functionals(const ValidatedProblem& problem, std::size_t interface,
                                              ValuePair minus, ValuePair plus);

/// Initial data at a that satisfies the left lambda-dependent condition.
ValuePair phi_initial(const ValidatedProblem& problem, Complex lambda);
/// Initial data at b that satisfies the right lambda-dependent condition.
ValuePair chi_initial(const ValidatedProblem& problem, Complex lambda);

PiecewiseSolution build_phi(const ValidatedProblem& problem, Complex lambda, double tol = kDefaultIvpTolerance);
PiecewiseSolution build_chi(const ValidatedProblem& problem, Complex lambda, double tol = kDefaultIvpTolerance);

/// Wronskian of phi and chi on `piece`, taken at the piece midpoint.
Complex omega_i(const PiecewiseSolution& phi, const PiecewiseSolution& chi, const ValidatedProblem& problem,
                std::size_t piece);
Complex omega_i(const ValidatedProblem& problem, Complex lambda, std::size_t piece, double tol = kDefaultIvpTolerance);

/// phi, chi and the per-piece Wronskians at one spectral parameter.
struct FundamentalSystem {
    PiecewiseSolution phi;
    PiecewiseSolution chi;
    std::vector<Complex> omega;          ///< omega_s for every piece
    double max_recursion_violation = 0;  ///< max_i |w_{i+1} t12 - w_i t34| / max(|w_{i+1} t12|, |w_i t34|)
};

/// Builds phi and chi and checks omega_{i+1} theta_i12 = omega_i theta_i34.
/// Throws ConsistencyViolation when the mismatch exceeds 1e-6 of the larger
/// of |omega| and the size of the products forming the Wronskian (the latter
/// keeps the check meaningful next to a zero of omega).
FundamentalSystem build_fundamental_system(const ValidatedProblem& problem, Complex lambda,
                                           double tol = kDefaultIvpTolerance);

/// Characteristic function omega(lambda) = omega_1(lambda).
Complex characteristic(const ValidatedProblem& problem, Complex lambda, double tol = kDefaultIvpTolerance);

}  // namespace bvtp
