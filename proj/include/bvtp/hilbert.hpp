#pragma once

#include "bvtp/fundamental.hpp"
#include "bvtp/piecewise_function.hpp"
#include "bvtp/problem.hpp"
#include "bvtp/quadrature.hpp"

#include <utility>

namespace bvtp {

enum class BoundaryFunctional {
    Ba,       ///< delta1 f(a) - delta2 f'(a)
    BaPrime,  ///< delta3 f(a) - delta4 f'(a)
    Bb,       ///< gamma1 f(b) - gamma2 f'(b)
    BbPrime,  ///< gamma3 f(b) - gamma4 f'(b)
};

/// Applies one boundary functional to endpoint data (value and slope at a or b).
Complex boundary_functional(const ValidatedProblem& problem, const ValuePair& endpoint, BoundaryFunctional which);
/// Same, reading the endpoint from the first or last piece of f.
Complex boundary_functional(const ValidatedProblem& problem, const PiecewiseFunction& f, BoundaryFunctional which);

/// Left condition Ba[u] - lambda B'a[u].
Complex left_condition(const ValidatedProblem& problem, const ValuePair& at_a, Complex lambda);
/// Right condition Bb[u] + lambda B'b[u].
Complex right_condition(const ValidatedProblem& problem, const ValuePair& at_b, Complex lambda);

/// (u, B'a[u], -B'b[u]): the element of the extended space carried by u.
AugmentedFunction augment(const ValidatedProblem& problem, PiecewiseFunction u);

struct InnerProductReport {
    Complex h1_part{};
    Complex left_boundary_part{};
    Complex right_boundary_part{};
    Complex total{};
    double quadrature_error_estimate = 0;
};

/// Weighted L2 product sum_s V_s int_{piece s} f conj(g). Boundary parts are zero.
InnerProductReport inner_h1(const ValidatedProblem& problem, const PiecewiseFunction& f, const PiecewiseFunction& g,
                            double quad_tol = kDefaultQuadTolerance);

/// Full product: h1 part + prod(theta34) F1 conj(G1)/kappa1 + prod(theta12) F2 conj(G2)/kappa2.
InnerProductReport inner_h(const ValidatedProblem& problem, const AugmentedFunction& F, const AugmentedFunction& G,
                           double quad_tol = kDefaultQuadTolerance);

double norm_h1(const ValidatedProblem& problem, const PiecewiseFunction& f, double quad_tol = kDefaultQuadTolerance);
double norm_h(const ValidatedProblem& problem, const AugmentedFunction& F, double quad_tol = kDefaultQuadTolerance);

/// W(f, conj g; x) = f(x) conj(g'(x)) - f'(x) conj(g(x)).
Complex conjugate_wronskian(const ValuePair& f, const ValuePair& g);

/// |theta34 W(f,conj g; xi-) - theta12 W(f,conj g; xi+)| relative to the larger
/// term (or to a thousandth of the product size when both Wronskians cancel).
double wronskian_transmission_identity(const ValidatedProblem& problem, const PiecewiseFunction& f,
                                       const PiecewiseFunction& g, std::size_t interface);

/// Residuals of the endpoint identities
///   Ba[f] conj(B'a[g]) - B'a[f] conj(Ba[g]) =  kappa1 W(f, conj g; a)
///   B'b[f] conj(Bb[g]) - Bb[f] conj(B'b[g]) = -kappa2 W(f, conj g; b)
/// each divided by max(1, size of its terms).
std::pair<double, double> boundary_identity_check(const ValidatedProblem& problem, const ValuePair& f_a,
                                                  const ValuePair& g_a, const ValuePair& f_b, const ValuePair& g_b);

/// |<Psi_j, Psi_k>| in the full product.
double check_orthogonality(const ValidatedProblem& problem, const AugmentedFunction& psi_j,
                           const AugmentedFunction& psi_k, double quad_tol = kDefaultQuadTolerance);

}  // namespace bvtp
