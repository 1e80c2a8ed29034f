#include "bvtp/hilbert.hpp"

#include "bvtp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bvtp {

Complex boundary_functional(const ValidatedProblem& problem, const ValuePair& e, BoundaryFunctional which) {
    const auto& d = problem.spec().delta;
    const auto& g = problem.spec().gamma;
    switch (which) {
        case BoundaryFunctional::Ba: return d[0] * e.u - d[1] * e.du;
        case BoundaryFunctional::BaPrime: return d[2] * e.u - d[3] * e.du;
        case BoundaryFunctional::Bb: return g[0] * e.u - g[1] * e.du;
        case BoundaryFunctional::BbPrime: return g[2] * e.u - g[3] * e.du;
    }
    return 0;
}

Complex boundary_functional(const ValidatedProblem& problem, const PiecewiseFunction& f, BoundaryFunctional which) {
    const bool left = which == BoundaryFunctional::Ba || which == BoundaryFunctional::BaPrime;
    const ValuePair e = left ? f(0, problem.a()) : f(problem.piece_count() - 1, problem.b());
    return boundary_functional(problem, e, which);
}

Complex left_condition(const ValidatedProblem& problem, const ValuePair& at_a, Complex lambda) {
    return boundary_functional(problem, at_a, BoundaryFunctional::Ba) -
           lambda * boundary_functional(problem, at_a, BoundaryFunctional::BaPrime);
}

Complex right_condition(const ValidatedProblem& problem, const ValuePair& at_b, Complex lambda) {
    return boundary_functional(problem, at_b, BoundaryFunctional::Bb) +
           lambda * boundary_functional(problem, at_b, BoundaryFunctional::BbPrime);
}

AugmentedFunction augment(const ValidatedProblem& problem, PiecewiseFunction u) {
    const Complex f1 = boundary_functional(problem, u, BoundaryFunctional::BaPrime);
    const Complex f2 = -boundary_functional(problem, u, BoundaryFunctional::BbPrime);
    return {std::move(u), f1, f2};
}

InnerProductReport inner_h1(const ValidatedProblem& problem, const PiecewiseFunction& f, const PiecewiseFunction& g,
                            double quad_tol) {
    if (f.piece_count() != problem.piece_count() || g.piece_count() != problem.piece_count()) {
        throw Error(ErrorCode::ShapeMismatch, "function piece count does not match the problem");
    }
    InnerProductReport r;
    for (std::size_t s = 0; s < problem.piece_count(); ++s) {
        const QuadratureResult q = integrate(
            [&](double x) { return f.value(s, x) * std::conj(g.value(s, x)); }, problem.piece_lo(s),
            problem.piece_hi(s), quad_tol);
        r.h1_part += problem.interval_weight(s) * q.value;
        r.quadrature_error_estimate += problem.interval_weight(s) * q.error_estimate;
    }
    r.total = r.h1_part;
    return r;
}

InnerProductReport inner_h(const ValidatedProblem& problem, const AugmentedFunction& F, const AugmentedFunction& G,
                           double quad_tol) {
    InnerProductReport r = inner_h1(problem, F.f, G.f, quad_tol);
    r.left_boundary_part = problem.left_boundary_weight() * F.f1 * std::conj(G.f1) / problem.kappa1();
    r.right_boundary_part = problem.right_boundary_weight() * F.f2 * std::conj(G.f2) / problem.kappa2();
    r.total = r.h1_part + r.left_boundary_part + r.right_boundary_part;
    return r;
}

double norm_h1(const ValidatedProblem& problem, const PiecewiseFunction& f, double quad_tol) {
    return std::sqrt(std::max(0.0, inner_h1(problem, f, f, quad_tol).total.real()));
}

double norm_h(const ValidatedProblem& problem, const AugmentedFunction& F, double quad_tol) {
    return std::sqrt(std::max(0.0, inner_h(problem, F, F, quad_tol).total.real()));
}

Complex conjugate_wronskian(const ValuePair& f, const ValuePair& g) {
    return f.u * std::conj(g.du) - f.du * std::conj(g.u);
}

double wronskian_transmission_identity(const ValidatedProblem& problem, const PiecewiseFunction& f,
                                       const PiecewiseFunction& g, std::size_t interface) {
    if (interface >= problem.interface_count()) {
        throw Error(ErrorCode::InvalidArgument, "interface " + std::to_string(interface + 1) + " out of range");
    }
    const double xi = problem.piece_hi(interface);
    const ValuePair fm = f(interface, xi);
    const ValuePair gm = g(interface, xi);
    const ValuePair fp = f(interface + 1, xi);
    const ValuePair gp = g(interface + 1, xi);
    const ThetaMinors& t = problem.theta(interface);
    const Complex left = t.t34 * conjugate_wronskian(fm, gm);
    const Complex right = t.t12 * conjugate_wronskian(fp, gp);
    const double products = t.t34 * (std::abs(fm.u * gm.du) + std::abs(fm.du * gm.u)) +
                            t.t12 * (std::abs(fp.u * gp.du) + std::abs(fp.du * gp.u));
    const double denom = std::max({std::abs(left), std::abs(right), 1e-3 * products});
    return denom > 0 ? std::abs(left - right) / denom : 0.0;
}

std::pair<double, double> boundary_identity_check(const ValidatedProblem& problem, const ValuePair& f_a,
                                                  const ValuePair& g_a, const ValuePair& f_b, const ValuePair& g_b) {
    using BF = BoundaryFunctional;
    const Complex ba_f = boundary_functional(problem, f_a, BF::Ba);
    const Complex bpa_f = boundary_functional(problem, f_a, BF::BaPrime);
    const Complex ba_g = boundary_functional(problem, g_a, BF::Ba);
    const Complex bpa_g = boundary_functional(problem, g_a, BF::BaPrime);
    const Complex left_lhs = ba_f * std::conj(bpa_g) - bpa_f * std::conj(ba_g);
    const Complex left_rhs = problem.kappa1() * conjugate_wronskian(f_a, g_a);
    const double left_size = std::max({1.0, std::abs(ba_f * bpa_g), std::abs(bpa_f * ba_g), std::abs(left_rhs)});

    const Complex bb_f = boundary_functional(problem, f_b, BF::Bb);
    const Complex bpb_f = boundary_functional(problem, f_b, BF::BbPrime);
    const Complex bb_g = boundary_functional(problem, g_b, BF::Bb);
    const Complex bpb_g = boundary_functional(problem, g_b, BF::BbPrime);
    const Complex right_lhs = bpb_f * std::conj(bb_g) - bb_f * std::conj(bpb_g);
    const Complex right_rhs = -problem.kappa2() * conjugate_wronskian(f_b, g_b);
    const double right_size = std::max({1.0, std::abs(bpb_f * bb_g), std::abs(bb_f * bpb_g), std::abs(right_rhs)});

    return {std::abs(left_lhs - left_rhs) / left_size, std::abs(right_lhs - right_rhs) / right_size};
}

double check_orthogonality(const ValidatedProblem& problem, const AugmentedFunction& psi_j,
                           const AugmentedFunction& psi_k, double quad_tol) {
    return std::abs(inner_h(problem, psi_j, psi_k, quad_tol).total);
}

}  // namespace bvtp
