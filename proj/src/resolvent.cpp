#include "bvtp/resolvent.hpp"

#include "bvtp/error.hpp"
#include "bvtp/hilbert.hpp"
#include "bvtp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bvtp {

namespace {

void reject_near_eigenvalue(const FundamentalSystem& system, Complex lambda) {
    const double threshold = kNearEigenvalueFactor * std::max(1.0, std::norm(lambda));
    if (std::abs(system.omega.front()) < threshold) {
        std::ostringstream os;
        os << "|omega(" << lambda << ")| = " << std::abs(system.omega.front()) << " is below " << threshold;
        throw Error(ErrorCode::NearEigenvalue, os.str());
    }
}

std::shared_ptr<const FundamentalSystem> checked_system(const ValidatedProblem& problem, Complex lambda,
                                                        double ivp_tol) {
    auto system = std::make_shared<const FundamentalSystem>(build_fundamental_system(problem, lambda, ivp_tol));
    reject_near_eigenvalue(*system, lambda);
    return system;
}

/// Integrals of phi f and chi f on every piece plus the coupling sums.
struct ResolventState {
    std::shared_ptr<const FundamentalSystem> system;
    std::vector<CumulativeIntegral> phi_f;
    std::vector<CumulativeIntegral> chi_f;
    std::vector<Complex> inv_weight;  ///< 1 / (rho_m^2 omega_m)
    std::vector<Complex> chi_tail;    ///< sum_{s>m} int chi_s f / (rho_s^2 omega_s)
    std::vector<Complex> phi_head;    ///< sum_{s<m} int phi_s f / (rho_s^2 omega_s)

    ValuePair operator()(std::size_t m, double x) const {
        const ValuePair phi = system->phi(m, x);
        const ValuePair chi = system->chi(m, x);
        const Complex p = phi_f[m].from_lo(x);
        const Complex c = chi_f[m].to_hi(x);
        const Complex k = inv_weight[m];
        return {k * (chi.u * p + phi.u * c) + phi.u * chi_tail[m] + chi.u * phi_head[m],
                k * (chi.du * p + phi.du * c) + phi.du * chi_tail[m] + chi.du * phi_head[m]};
    }
};

}  // namespace

GreenKernel::GreenKernel(const ValidatedProblem& problem, Complex lambda, double ivp_tol)
    : problem_(problem), lambda_(lambda), system_(checked_system(problem, lambda, ivp_tol)) {}

Complex GreenKernel::evaluate(std::size_t piece_x, double x, std::size_t piece_y, double y) const {
    const bool y_first = piece_y < piece_x || (piece_y == piece_x && y <= x);
    const Complex denom = problem_.rho2(piece_y) * system_->omega[piece_y];
    if (y_first) return system_->phi(piece_y, y).u * system_->chi(piece_x, x).u / denom;
    return system_->phi(piece_x, x).u * system_->chi(piece_y, y).u / denom;
}

GreensEvaluation GreenKernel::operator()(double x, double y) const {
    for (double p : {x, y}) {
        if (p < problem_.a() || p > problem_.b()) {
            std::ostringstream os;
            os << "point " << p << " lies outside [" << problem_.a() << ", " << problem_.b() << "]";
            throw Error(ErrorCode::InvalidArgument, os.str());
        }
        if (problem_.is_interface_point(p)) {
            std::ostringstream os;
            os << "point " << p << " is an interface point; the kernel is two-valued there";
            throw Error(ErrorCode::InterfacePoint, os.str());
        }
    }
    const std::size_t mx = problem_.piece_of(x);
    const std::size_t my = problem_.piece_of(y);
    return {x, y, lambda_, evaluate(mx, x, my, y), mx, my};
}

Complex greens(const ValidatedProblem& problem, Complex lambda, double x, double y, double ivp_tol) {
    return GreenKernel(problem, lambda, ivp_tol)(x, y).value;
}

ResolventSolution solve_resolvent(const ValidatedProblem& problem, Complex lambda, const PiecewiseFunction& f,
                                  const ResolventOptions& options) {
    if (f.piece_count() != problem.piece_count()) {
        throw Error(ErrorCode::ShapeMismatch, "right-hand side piece count does not match the problem");
    }
    const std::size_t pieces = problem.piece_count();
    auto state = std::make_shared<ResolventState>();
    state->system = checked_system(problem, lambda, options.ivp_tol);
    const auto sys = state->system;
    const auto owned_f = std::make_shared<const PiecewiseFunction>(f);

    std::vector<Complex> c(pieces);
    std::vector<Complex> d(pieces);
    for (std::size_t m = 0; m < pieces; ++m) {
        const double lo = problem.piece_lo(m);
        const double hi = problem.piece_hi(m);
        state->phi_f.emplace_back([sys, owned_f, m](double x) { return sys->phi(m, x).u * owned_f->value(m, x); },
                                  lo, hi, options.quad_tol);
        state->chi_f.emplace_back([sys, owned_f, m](double x) { return sys->chi(m, x).u * owned_f->value(m, x); },
                                  lo, hi, options.quad_tol);
        state->inv_weight.push_back(1.0 / (problem.rho2(m) * sys->omega[m]));
        c[m] = state->chi_f[m].total() * state->inv_weight[m];
        d[m] = state->phi_f[m].total() * state->inv_weight[m];
    }
    state->chi_tail.assign(pieces, 0);
    state->phi_head.assign(pieces, 0);
    for (std::size_t m = pieces - 1; m-- > 0;) state->chi_tail[m] = state->chi_tail[m + 1] + c[m + 1];
    for (std::size_t m = 1; m < pieces; ++m) state->phi_head[m] = state->phi_head[m - 1] + d[m - 1];

    std::vector<PiecewiseFunction::Piece> u_pieces;
    for (std::size_t m = 0; m < pieces; ++m) {
        u_pieces.emplace_back([state, m](double x) { return (*state)(m, x); });
    }

    ResolventSolution out;
    out.lambda = lambda;
    out.u = PiecewiseFunction(std::move(u_pieces));

    double ode = 0;
    for (std::size_t m = 0; m < pieces; ++m) {
        const double lo = problem.piece_lo(m);
        const double len = problem.piece_hi(m) - lo;
        const double h = 1e-2 * len;
        const std::size_t count = std::max<std::size_t>(options.check_points, 2);
        for (std::size_t k = 0; k < count; ++k) {
            const double x = lo + len * (0.03 + 0.94 * static_cast<double>(k) / static_cast<double>(count - 1));
            const Complex u0 = out.u.value(m, x);
            const Complex upp = (-out.u.value(m, x + 2 * h) + 16.0 * out.u.value(m, x + h) - 30.0 * u0 +
                                 16.0 * out.u.value(m, x - h) - out.u.value(m, x - 2 * h)) /
                                (12 * h * h);
            const Complex fx = f.value(m, x);
            out.f_sup = std::max(out.f_sup, std::abs(fx));
            ode = std::max(ode, std::abs(lambda * u0 + problem.rho2(m) * upp - problem.q(m)(x) * u0 - fx));
        }
    }
    out.residual_ode = ode == 0 ? 0 : ode / std::max(out.f_sup, std::numeric_limits<double>::min());

    const auto& dl = problem.spec().delta;
    const auto& gm = problem.spec().gamma;
    const double al = std::abs(lambda);
    const ValuePair ua = out.u(0, problem.a());
    const ValuePair ub = out.u(pieces - 1, problem.b());
    const double left_terms = (std::abs(dl[0]) + al * std::abs(dl[2])) * std::abs(ua.u) +
                              (std::abs(dl[1]) + al * std::abs(dl[3])) * std::abs(ua.du);
    const double right_terms = (std::abs(gm[0]) + al * std::abs(gm[2])) * std::abs(ub.u) +
                               (std::abs(gm[1]) + al * std::abs(gm[3])) * std::abs(ub.du);
    const double left = std::abs(left_condition(problem, ua, lambda));
    const double right = std::abs(right_condition(problem, ub, lambda));
    out.residual_bc = std::max(left == 0 ? 0 : left / left_terms, right == 0 ? 0 : right / right_terms);

    for (std::size_t i = 0; i < problem.interface_count(); ++i) {
        const double xi = problem.piece_hi(i);
        const TransmissionResidual r = transmission_functionals(problem, i, out.u(i, xi), out.u(i + 1, xi));
        const auto& tm = problem.transmission(i);
        double row = 0;
        for (const auto& rr : {tm.row1, tm.row2}) {
            row = std::max(row, std::abs(rr[0]) + std::abs(rr[1]) + std::abs(rr[2]) + std::abs(rr[3]));
        }
        const double size = std::max(std::abs(r.first), std::abs(r.second));
        if (size > 0) out.residual_trans = std::max(out.residual_trans, size / (r.scale * row));
    }
    return out;
}

double resolvent_selfadjointness_check(const ValidatedProblem& problem, double lambda, const PiecewiseFunction& f,
                                       const PiecewiseFunction& g, const ResolventOptions& options) {
    const ResolventSolution rf = solve_resolvent(problem, lambda, f, options);
    const ResolventSolution rg = solve_resolvent(problem, lambda, g, options);
    const Complex lhs = inner_h1(problem, rf.u, g, options.quad_tol).total;
    const Complex rhs = inner_h1(problem, f, rg.u, options.quad_tol).total;
    const double norms = norm_h1(problem, f, options.quad_tol) * norm_h1(problem, g, options.quad_tol);
    const double diff = std::abs(lhs - rhs);
    return diff == 0 ? 0 : diff / norms;
}

}  // namespace bvtp
