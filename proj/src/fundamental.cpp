#include "bvtp/fundamental.hpp"

#include "bvtp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bvtp {

PiecewiseSolution::PiecewiseSolution(SolutionKind kind, Complex lambda, std::vector<SolutionTrace> pieces,
                                     std::vector<InterfaceValues> interfaces)
    : kind_(kind), lambda_(lambda), pieces_(std::move(pieces)), interfaces_(std::move(interfaces)) {}

ValuePair transmit_forward(const ValidatedProblem& problem, std::size_t interface, ValuePair left) {
    // Cramer's rule on the interface system solved for (u'(xi+), u(xi+)).
    const ThetaMinors& t = problem.theta(interface);
    return {-(t.t13 * left.du + t.t14 * left.u) / t.t12, (t.t23 * left.du + t.t24 * left.u) / t.t12};
}

ValuePair transmit_backward(const ValidatedProblem& problem, std::size_t interface, ValuePair right) {
    const ThetaMinors& t = problem.theta(interface);
    return {(t.t13 * right.du + t.t23 * right.u) / t.t34, -(t.t14 * right.du + t.t24 * right.u) / t.t34};
}

TransmissionResidual transmission_functionals(const ValidatedProblem& problem, std::size_t interface,
                                              ValuePair minus, ValuePair plus) {
    const TransmissionMatrix& m = problem.transmission(interface);
    auto apply = [&](const std::array<double, 4>& r) {
        return r[0] * plus.du + r[1] * plus.u + r[2] * minus.du + r[3] * minus.u;
    };
    const double scale = std::max({std::abs(minus.u), std::abs(minus.du), std::abs(plus.u), std::abs(plus.du)});
    return {apply(m.row1), apply(m.row2), scale};
}

ValuePair phi_initial(const ValidatedProblem& problem, Complex lambda) {
    const auto& d = problem.spec().delta;
    return {d[1] - lambda * d[3], d[0] - lambda * d[2]};
}

ValuePair chi_initial(const ValidatedProblem& problem, Complex lambda) {
    const auto& g = problem.spec().gamma;
    return {g[1] + lambda * g[3], g[0] + lambda * g[2]};
}

namespace {

template <typename F>
auto annotate(std::size_t piece, const char* which, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.code(), std::string(which) + " piece " + std::to_string(piece + 1) + ": " + e.what(),
                    static_cast<int>(piece + 1));
    }
}

}  // namespace

PiecewiseSolution build_phi(const ValidatedProblem& problem, Complex lambda, double tol) {
    const std::size_t pieces = problem.piece_count();
    std::vector<SolutionTrace> traces;
    std::vector<InterfaceValues> jumps;
    traces.reserve(pieces);
    ValuePair init = phi_initial(problem, lambda);
    for (std::size_t s = 0; s < pieces; ++s) {
        traces.push_back(
            annotate(s, "phi", [&] { return integrate_ivp(problem, s, lambda, StartPoint::Left, init, tol); }));
        if (s + 1 < pieces) {
            const ValuePair minus = traces.back().at_hi();
            init = transmit_forward(problem, s, minus);
            jumps.push_back({minus, init});
        }
    }
    return PiecewiseSolution(SolutionKind::Phi, lambda, std::move(traces), std::move(jumps));
}

PiecewiseSolution build_chi(const ValidatedProblem& problem, Complex lambda, double tol) {
    const std::size_t pieces = problem.piece_count();
    std::vector<SolutionTrace> traces(pieces);
    std::vector<InterfaceValues> jumps(pieces - 1);
    ValuePair init = chi_initial(problem, lambda);
    for (std::size_t s = pieces; s-- > 0;) {
        traces[s] = annotate(s, "chi", [&] { return integrate_ivp(problem, s, lambda, StartPoint::Right, init, tol); });
        if (s > 0) {
            const ValuePair plus = traces[s].at_lo();
            init = transmit_backward(problem, s - 1, plus);
            jumps[s - 1] = {init, plus};
        }
    }
    return PiecewiseSolution(SolutionKind::Chi, lambda, std::move(traces), std::move(jumps));
}

Complex omega_i(const PiecewiseSolution& phi, const PiecewiseSolution& chi, const ValidatedProblem& problem,
                std::size_t piece) {
    return wronskian_at(phi.piece(piece), chi.piece(piece), problem.piece_mid(piece));
}

Complex omega_i(const ValidatedProblem& problem, Complex lambda, std::size_t piece, double tol) {
    if (piece >= problem.piece_count()) {
        throw Error(ErrorCode::InvalidArgument, "piece index " + std::to_string(piece + 1) + " out of range");
    }
    return omega_i(build_phi(problem, lambda, tol), build_chi(problem, lambda, tol), problem, piece);
}

FundamentalSystem build_fundamental_system(const ValidatedProblem& problem, Complex lambda, double tol) {
    FundamentalSystem sys{build_phi(problem, lambda, tol), build_chi(problem, lambda, tol), {}, 0};
    const std::size_t pieces = problem.piece_count();
    sys.omega.resize(pieces);
    std::vector<double> term_scale(pieces);
    for (std::size_t s = 0; s < pieces; ++s) {
        const double mid = problem.piece_mid(s);
        const ValuePair f = sys.phi(s, mid);
        const ValuePair g = sys.chi(s, mid);
        sys.omega[s] = wronskian(f, g);
        term_scale[s] = std::abs(f.u * g.du) + std::abs(f.du * g.u);
    }
    for (std::size_t i = 0; i + 1 < pieces; ++i) {
        const ThetaMinors& t = problem.theta(i);
        const Complex lhs = sys.omega[i + 1] * t.t12;
        const Complex rhs = sys.omega[i] * t.t34;
        const double gap = std::abs(lhs - rhs);
        const double size = std::max(std::abs(lhs), std::abs(rhs));
        const double relative = size > 0 ? gap / size : 0.0;
        sys.max_recursion_violation = std::max(sys.max_recursion_violation, relative);
        const double guarded = gap / std::max({size, term_scale[i] * t.t34, term_scale[i + 1] * t.t12,
                                               std::numeric_limits<double>::min()});
        if (guarded > 1e-6) {
            throw Error(ErrorCode::ConsistencyViolation,
                        "Wronskian recursion broken at interface " + std::to_string(i + 1) + " (relative mismatch " +
                            std::to_string(guarded) + ")",
                        static_cast<int>(i + 1));
        }
    }
    return sys;
}

Complex characteristic(const ValidatedProblem& problem, Complex lambda, double tol) {
    return build_fundamental_system(problem, lambda, tol).omega.front();
}

}  // namespace bvtp
