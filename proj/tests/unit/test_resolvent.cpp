#include "oracles/closed_form.hpp"
#include "support.hpp"

#include "bvtp/expansion.hpp"
#include "bvtp/fd_oracle.hpp"
#include "bvtp/hilbert.hpp"
#include "bvtp/resolvent.hpp"

#include <doctest.h>

#include <cmath>

using namespace bvtp;
using test_support::error_code;

namespace {

PiecewiseFunction one(const ValidatedProblem& p) { return PiecewiseFunction::constant(p.piece_count(), 1); }
PiecewiseFunction monomial(const ValidatedProblem& p, int degree) {
    std::vector<double> c(degree + 1, 0.0);
    c.back() = 1;
    return PiecewiseFunction::polynomial(p.piece_count(), Polynomial{c});
}

/// Kernel from the closed-form P0 solutions: G = phi(min) chi(max) / omega.
Complex p0_kernel(double lambda, double x, double y) {
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    return oracle::p0_phi(lambda, lo).u * oracle::p0_chi(lambda, hi).u / oracle::p0_omega(lambda);
}

}  // namespace

TEST_CASE("diagonal values agree from both sides") {
    const auto p = test_support::p0();
    const GreenKernel g(p, -1.0);
    const Complex diag = g(0.5, 0.5).value;
    CHECK(std::abs(g(0.5, 0.5 - 1e-9).value - diag) < 1e-8);
    CHECK(std::abs(g(0.5, 0.5 + 1e-9).value - diag) < 1e-8);
}

TEST_CASE("P0 kernel is symmetric and matches the closed form") {
    const auto p = test_support::p0();
    const Complex a = greens(p, -1.0, 0.7, 0.3);
    const Complex b = greens(p, -1.0, 0.3, 0.7);
    CHECK(std::abs(a - b) < 1e-10 * std::abs(a));
    CHECK(test_support::relative(a, p0_kernel(-1, 0.7, 0.3)) < 1e-9);
    CHECK(test_support::relative(greens(p, 7.5, 0.1, 0.95), p0_kernel(7.5, 0.1, 0.95)) < 1e-9);
}

TEST_CASE("P2 weighted kernel symmetry") {
    const auto p = test_support::p2();
    const GreenKernel g(p, -2.0);
    const auto xy = g(0.5, -0.5);
    const auto yx = g(-0.5, 0.5);
    CHECK(xy.piece_x == 1);
    CHECK(xy.piece_y == 0);
    const Complex lhs = p.interval_weight(1) * xy.value;
    const Complex rhs = p.interval_weight(0) * yx.value;
    CHECK(std::abs(lhs - rhs) < 1e-8 * std::abs(lhs));
    // Raw kernel is not symmetric across pieces.
    CHECK(std::abs(xy.value - yx.value) > 1e-3 * std::abs(xy.value));

    for (double x : {-0.9, -0.4, 0.15, 0.6}) {
        for (double y : {-0.7, -0.05, 0.33, 0.95}) {
            const auto a = g(x, y);
            const auto b = g(y, x);
            const Complex wa = p.interval_weight(a.piece_x) * a.value;
            const Complex wb = p.interval_weight(b.piece_x) * b.value;
            CHECK(std::abs(wa - wb) < 1e-8 * std::max(std::abs(wa), 1e-12));
        }
    }
}

TEST_CASE("kernel argument checks") {
    const auto p = test_support::p2();
    const GreenKernel g(p, -2.0);
    CHECK(error_code([&] { g(0.0, 0.5); }) == ErrorCode::InterfacePoint);
    CHECK(error_code([&] { g(0.5, 0.0); }) == ErrorCode::InterfacePoint);
    CHECK(error_code([&] { g(1.5, 0.5); }) == ErrorCode::InvalidArgument);
    CHECK_NOTHROW(g.evaluate(0, 0.0, 1, 0.5));
}

TEST_CASE("solves near an eigenvalue are refused") {
    const auto p = test_support::p0();
    const double root = oracle::bisect(oracle::p0_omega, 1.0, 1.5);
    CHECK(error_code([&] { GreenKernel(p, root); }) == ErrorCode::NearEigenvalue);
    CHECK(error_code([&] { solve_resolvent(p, root, one(p)); }) == ErrorCode::NearEigenvalue);
}

TEST_CASE("f = 1 residuals on every fixture") {
    for (const auto& p : {test_support::p0(), test_support::p1(), test_support::p2()}) {
        for (double lambda : {-1.0, -3.0}) {
            const auto sol = solve_resolvent(p, lambda, one(p));
            CHECK(sol.residual_ode < 1e-6);
            CHECK(sol.residual_bc < 1e-6);
            CHECK(sol.residual_trans < 1e-7);
            CHECK(sol.f_sup == doctest::Approx(1));
        }
    }
}

TEST_CASE("complex lambda and polynomial right-hand side") {
    const auto p = test_support::p2();
    const auto f = PiecewiseFunction::polynomials({Polynomial{{1, 2}}, Polynomial{{0, -1, 3}}});
    const auto sol = solve_resolvent(p, Complex(4, 2), f);
    CHECK(sol.residual_ode < 1e-6);
    CHECK(sol.residual_bc < 1e-6);
    CHECK(sol.residual_trans < 1e-7);
}

TEST_CASE("P0 solution matches the closed-form kernel integral") {
    const auto p = test_support::p0();
    const auto sol = solve_resolvent(p, -1.0, one(p));
    // u(x) = int G(x, y) dy; the sign follows from lambda u + u'' = f.
    for (double x : {0.1, 0.45, 0.8}) {
        const Complex want =
            oracle::simpson([&](double y) { return p0_kernel(-1, x, y); }, 0, x, 2000) +
            oracle::simpson([&](double y) { return p0_kernel(-1, x, y); }, x, 1, 2000);
        const Complex got = sol.u.value(0, x);
        CHECK(std::abs(got - want) < 1e-9);
    }
}

TEST_CASE("zero right-hand side gives zero") {
    for (const auto& p : {test_support::p0(), test_support::p2()}) {
        const auto sol = solve_resolvent(p, -1.0, PiecewiseFunction::zero(p.piece_count()));
        for (std::size_t s = 0; s < p.piece_count(); ++s) {
            for (double t : {0.0, 0.3, 1.0}) {
                const double x = p.piece_lo(s) + t * (p.piece_hi(s) - p.piece_lo(s));
                CHECK(std::abs(sol.u(s, x).u) == 0);
                CHECK(std::abs(sol.u(s, x).du) == 0);
            }
        }
    }
}

TEST_CASE("agreement with the finite-difference solve") {
    const auto p = test_support::p0();
    const auto sol = solve_resolvent(p, -1.0, one(p));
    const auto grid = oracle_solve(p, -1.0, one(p), 2000);
    CHECK(grid.sup_distance(sol.u) < 1e-5);
    const auto p2 = test_support::p2();
    const auto sol2 = solve_resolvent(p2, -3.0, one(p2));
    CHECK(oracle_solve(p2, -3.0, one(p2), 2000).sup_distance(sol2.u) < 1e-5);
}

TEST_CASE("self-adjointness of the resolvent") {
    const auto p0 = test_support::p0();
    const auto p2 = test_support::p2();
    CHECK(resolvent_selfadjointness_check(p0, -1, one(p0), one(p0)) < 1e-14);
    CHECK(resolvent_selfadjointness_check(p0, -1, one(p0), monomial(p0, 1)) < 1e-6);
    CHECK(resolvent_selfadjointness_check(p2, -2, one(p2), monomial(p2, 2)) < 1e-6);
    CHECK(resolvent_selfadjointness_check(p2, 5.5, monomial(p2, 1), monomial(p2, 3)) < 1e-6);
}

TEST_CASE("simple-pole scaling near an eigenvalue") {
    const auto p = test_support::p2();
    const auto s = eigenvalues(p, {0, 10}, 200);
    REQUIRE(!s.eigenvalues.empty());
    const double root = s.eigenvalues[0];
    std::vector<double> products;
    for (int j = 2; j <= 6; ++j) {
        const double lambda = root + std::pow(10.0, -j);
        const auto sol = solve_resolvent(p, lambda, one(p));
        const double w = std::abs(characteristic(p, lambda, 1e-12));
        products.push_back(w * norm_h1(p, sol.u, 1e-12));
    }
    const auto [lo, hi] = std::minmax_element(products.begin(), products.end());
    CHECK(*lo > 0);
    CHECK(*hi / *lo < 2);
}

TEST_CASE("spectral partial sums approach the resolvent") {
    const auto p = test_support::p0();
    const double lambda = -3;
    const auto basis = eigenbasis(p, eigenvalues(p, {-5, 3000}, 6001), 20);
    const auto f = one(p);
    const auto sol = solve_resolvent(p, lambda, f);
    // (lambda - N)^{-1} F = sum c_s / (lambda - lambda_s) Psi_s with F = (f, 0, 0).
    const AugmentedFunction F = AugmentedFunction::plain(f);
    std::vector<double> distances;
    for (std::size_t n : {5u, 10u, 20u}) {
        PiecewiseFunction partial = PiecewiseFunction::zero(1);
        for (std::size_t s = 0; s < n; ++s) {
            const Complex c = inner_h(p, F, basis[s].psi, 1e-12).total / (lambda - basis[s].lambda);
            partial = partial + basis[s].psi.f.scaled(c);
        }
        distances.push_back(norm_h1(p, sol.u - partial, 1e-12));
    }
    CHECK(distances[0] > distances[1]);
    CHECK(distances[1] > distances[2]);
    CHECK(distances[2] < 1e-3);
}
