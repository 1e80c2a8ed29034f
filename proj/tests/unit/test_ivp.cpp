#include "oracles/closed_form.hpp"
#include "support.hpp"

#include "bvtp/ivp.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bvtp;
using test_support::error_code;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> samples(double lo, double hi, int n) {
    std::vector<double> xs;
    for (int k = 0; k < n; ++k) xs.push_back(lo + (hi - lo) * (k + 0.5) / n);
    xs.push_back(lo);
    xs.push_back(hi);
    return xs;
}

}  // namespace

TEST_CASE("constant and linear solutions at lambda 0") {
    const auto p = test_support::p0();
    const auto one = integrate_ivp(p, 0, 0.0, StartPoint::Left, {1, 0}, 1e-12);
    const auto lin = integrate_ivp(p, 0, 0.0, StartPoint::Left, {0, 1}, 1e-12);
    for (double x : samples(0, 1, 13)) {
        CHECK(std::abs(one(x).u - 1.0) < 1e-13);
        CHECK(std::abs(one(x).du) < 1e-13);
        CHECK(std::abs(lin(x).u - x) < 1e-13);
        CHECK(std::abs(lin(x).du - 1.0) < 1e-13);
    }
}

TEST_CASE("sin(pi x) at lambda = pi^2") {
    const double tol = 1e-12;
    const auto p = test_support::p0();
    const auto t = integrate_ivp(p, 0, kPi * kPi, StartPoint::Left, {0, kPi}, tol);
    double err = 0;
    for (double x : samples(0, 1, 200)) {
        err = std::max(err, std::abs(t(x).u - std::sin(kPi * x)));
        err = std::max(err, std::abs(t(x).du - kPi * std::cos(kPi * x)) / kPi);
    }
    CHECK(err < 10 * tol);
}

TEST_CASE("backward integration on the right piece of P2") {
    const double tol = 1e-12;
    const auto p = test_support::p2();
    const auto t = integrate_ivp(p, 1, 4.0, StartPoint::Right, {1, 0}, tol);
    CHECK(t.x_lo() == 0);
    CHECK(t.x_hi() == 1);
    for (double x : samples(0, 1, 100)) {
        CHECK(std::abs(t(x).u - std::cos(x - 1)) < 10 * tol);
        CHECK(std::abs(t(x).du + std::sin(x - 1)) < 10 * tol);
    }
}

TEST_CASE("large complex lambda agrees with the closed form") {
    const double tol = 1e-12;
    const auto p = test_support::p0();
    const Complex lambda(400, 30);
    const auto t = integrate_ivp(p, 0, lambda, StartPoint::Left, {1, 0}, tol);
    for (double x : samples(0, 1, 40)) {
        const auto ref = oracle::propagate(lambda, 1, 0, {1, 0}, x);
        CHECK(std::abs(t(x).u - ref.u) < 1e-9 * std::max(1.0, std::abs(ref.u)));
    }
}

TEST_CASE("stored nodes are reproduced exactly") {
    const auto p = test_support::p2();
    const auto t = integrate_ivp(p, 0, 12.5, StartPoint::Left, {0.3, -1.1}, 1e-11);
    for (std::size_t k = 0; k < t.nodes().size(); ++k) {
        const ValuePair v = t(t.nodes()[k]);
        CHECK(v.u == t.node_value(k).u);
        CHECK(v.du == t.node_value(k).du);
    }
    CHECK(t.step_count() >= 8);
}

TEST_CASE("mesh has at least eight steps per piece") {
    const auto p = test_support::p0();
    const auto t = integrate_ivp(p, 0, 0.0, StartPoint::Left, {1, 0}, 1e-6);
    for (std::size_t k = 0; k + 1 < t.nodes().size(); ++k) CHECK(t.nodes()[k + 1] - t.nodes()[k] <= 0.125 + 1e-15);
}

TEST_CASE("interpolant satisfies the equation at step midpoints") {
    const auto p = test_support::p2();
    const Complex lambda = 30;
    const auto t = integrate_ivp(p, 1, lambda, StartPoint::Left, {1, 0.5}, 1e-12);
    double worst = 0;
    for (std::size_t k = 0; k + 1 < t.nodes().size(); ++k) {
        const double x = 0.5 * (t.nodes()[k] + t.nodes()[k + 1]);
        const double h = 1e-4 * (t.nodes()[k + 1] - t.nodes()[k]);
        const Complex d2 = (t(x + h).du - t(x - h).du) / (2 * h);
        const Complex rhs = (p.q(1)(x) - lambda) * t(x).u / p.rho2(1);
        worst = std::max(worst, std::abs(d2 - rhs) / std::max(1.0, std::abs(rhs)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("Wronskian examples") {
    const auto p = test_support::p0();
    const auto t1 = integrate_ivp(p, 0, 0.0, StartPoint::Left, {1, 0}, 1e-12);
    const auto t2 = integrate_ivp(p, 0, 0.0, StartPoint::Left, {0, 1}, 1e-12);
    for (double x : samples(0, 1, 9)) {
        CHECK(std::abs(wronskian_at(t1, t1, x)) == 0);
        CHECK(std::abs(wronskian_at(t1, t2, x) - 1.0) < 1e-13);
    }
}

TEST_CASE("Wronskian constancy at lambda = pi^2 and with a potential") {
    auto spread = [](const SolutionTrace& a, const SolutionTrace& b) {
        double lo = 1e300;
        double hi = -1e300;
        double size = 0;
        for (int k = 0; k < 20; ++k) {
            const double x = a.x_lo() + (a.x_hi() - a.x_lo()) * k / 19.0;
            const double w = std::abs(wronskian_at(a, b, x));
            lo = std::min(lo, w);
            hi = std::max(hi, w);
            size = std::max(size, w);
        }
        return (hi - lo) / size;
    };
    const auto p = test_support::p0();
    CHECK(spread(integrate_ivp(p, 0, kPi * kPi, StartPoint::Left, {1, 0}, 1e-12),
                 integrate_ivp(p, 0, kPi * kPi, StartPoint::Left, {0, 1}, 1e-12)) < 1e-9);

    ProblemSpec s = fixtures::p2();
    s.q[0].coefficients = {1, -2, 3};
    const auto pq = validate_problem(s);
    CHECK(spread(integrate_ivp(pq, 0, Complex(50, 2), StartPoint::Left, {1, 0}, 1e-12),
                 integrate_ivp(pq, 0, Complex(50, 2), StartPoint::Right, {0.2, 1}, 1e-12)) < 1e-9);
}

TEST_CASE("Wronskian of mismatched traces") {
    const auto p = test_support::p2();
    const auto a = integrate_ivp(p, 0, 1.0, StartPoint::Left, {1, 0});
    const auto b = integrate_ivp(p, 1, 1.0, StartPoint::Left, {1, 0});
    const auto c = integrate_ivp(p, 0, 2.0, StartPoint::Left, {1, 0});
    CHECK(error_code([&] { wronskian_at(a, b, 0.0); }) == ErrorCode::DomainMismatch);
    CHECK(error_code([&] { wronskian_at(a, c, -0.5); }) == ErrorCode::DomainMismatch);
    CHECK(error_code([&] { a(0.5); }) == ErrorCode::DomainMismatch);
}

TEST_CASE("linearity in the initial data") {
    const double tol = 1e-12;
    auto g = test_support::rng(7);
    ProblemSpec s = fixtures::p2();
    s.q[1].coefficients = {0.5, 1};
    const auto p = validate_problem(s);
    for (int trial = 0; trial < 5; ++trial) {
        const double alpha = test_support::uniform(g, -2, 2);
        const double beta = test_support::uniform(g, -2, 2);
        const Complex lambda(test_support::uniform(g, -10, 60), test_support::uniform(g, -3, 3));
        const ValuePair i1{1, 0};
        const ValuePair i2{0.3, -1};
        const auto t1 = integrate_ivp(p, 1, lambda, StartPoint::Left, i1, tol);
        const auto t2 = integrate_ivp(p, 1, lambda, StartPoint::Left, i2, tol);
        const auto t3 = integrate_ivp(p, 1, lambda, StartPoint::Left,
                                      {alpha * i1.u + beta * i2.u, alpha * i1.du + beta * i2.du}, tol);
        for (double x : samples(0, 1, 25)) {
            const Complex want = alpha * t1(x).u + beta * t2(x).u;
            CHECK(std::abs(t3(x).u - want) < 10 * tol * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("forward then backward returns the initial data") {
    const double tol = 1e-12;
    const auto p = test_support::p2();
    for (Complex lambda : {Complex(-4), Complex(3), Complex(80, 5)}) {
        const ValuePair init{0.7, -0.4};
        const auto fwd = integrate_ivp(p, 0, lambda, StartPoint::Left, init, tol);
        const auto back = integrate_ivp(p, 0, lambda, StartPoint::Right, fwd.at_hi(), tol);
        const double scale = std::max({1.0, std::abs(fwd.at_hi().u), std::abs(fwd.at_hi().du)});
        CHECK(std::abs(back.at_lo().u - init.u) < 100 * tol * scale);
        CHECK(std::abs(back.at_lo().du - init.du) < 100 * tol * scale);
    }
}

TEST_CASE("conjugate lambda gives conjugate traces") {
    const double tol = 1e-12;
    const auto p = test_support::p2();
    const Complex lambda(12, 4);
    const auto t = integrate_ivp(p, 1, lambda, StartPoint::Right, {1, 2}, tol);
    const auto tc = integrate_ivp(p, 1, std::conj(lambda), StartPoint::Right, {1, 2}, tol);
    for (double x : samples(0, 1, 30)) {
        CHECK(std::abs(tc(x).u - std::conj(t(x).u)) < 10 * tol * std::max(1.0, std::abs(t(x).u)));
    }
}

TEST_CASE("real lambda gives real values") {
    const auto p = test_support::p0();
    const auto t = integrate_ivp(p, 0, 55.0, StartPoint::Left, {1, 0});
    for (double x : samples(0, 1, 10)) CHECK(t(x).u.imag() == 0);
}

TEST_CASE("invalid tolerance") {
    const auto p = test_support::p0();
    CHECK(error_code([&] { integrate_ivp(p, 0, 1.0, StartPoint::Left, {1, 0}, 0.0); }).has_value());
}

TEST_CASE("non-finite initial data") {
    const auto p = test_support::p0();
    CHECK(error_code([&] { integrate_ivp(p, 0, 1.0, StartPoint::Left, {std::nan(""), 0}); }) ==
          ErrorCode::NonFiniteState);
}
