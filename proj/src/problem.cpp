#include "bvtp/problem.hpp"

#include "bvtp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bvtp {

double Polynomial::operator()(double x) const {
    double acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

Polynomial Polynomial::shifted(double x0) const {
    // Repeated synthetic division gives the Taylor coefficients at x0.
    std::vector<double> c = coefficients;
    const std::size_t n = c.size();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = n - 1; j > k; --j) {
            c[j - 1] += x0 * c[j];
        }
    }
    return Polynomial{std::move(c)};
}

namespace {

const std::array<double, 2> column(const TransmissionMatrix& tm, int j) {
    return {tm.row1[j - 1], tm.row2[j - 1]};
}

}  // namespace

double theta_minor(const TransmissionMatrix& tm, int j, int k) {
    if (j < 1 || k > 4 || j >= k) {
        throw Error(ErrorCode::BadColumnPair,
                    "column pair (" + std::to_string(j) + "," + std::to_string(k) + ") must satisfy 1 <= j < k <= 4");
    }
    const auto cj = column(tm, j);
    const auto ck = column(tm, k);
    return cj[0] * ck[1] - ck[0] * cj[1];
}

ThetaMinors ThetaMinors::of(const TransmissionMatrix& tm) {
    ThetaMinors t;
    t.t12 = theta_minor(tm, 1, 2);
    t.t13 = theta_minor(tm, 1, 3);
    t.t14 = theta_minor(tm, 1, 4);
    t.t23 = theta_minor(tm, 2, 3);
    t.t24 = theta_minor(tm, 2, 4);
    t.t34 = theta_minor(tm, 3, 4);
    return t;
}

double ThetaMinors::operator()(int j, int k) const {
    switch (j * 10 + k) {
        case 12: return t12;
        case 13: return t13;
        case 14: return t14;
        case 23: return t23;
        case 24: return t24;
        case 34: return t34;
        default:
            throw Error(ErrorCode::BadColumnPair,
                        "column pair (" + std::to_string(j) + "," + std::to_string(k) + ") must satisfy 1 <= j < k <= 4");
    }
}

double ValidatedProblem::piece_lo(std::size_t piece) const {
    return piece == 0 ? spec_.a : spec_.xi[piece - 1];
}

double ValidatedProblem::piece_hi(std::size_t piece) const {
    return piece == spec_.xi.size() ? spec_.b : spec_.xi[piece];
}

std::size_t ValidatedProblem::piece_of(double x) const {
    const auto it = std::lower_bound(spec_.xi.begin(), spec_.xi.end(), x);
    return static_cast<std::size_t>(it - spec_.xi.begin());
}

bool ValidatedProblem::is_interface_point(double x, double rel_tol) const {
    const double scale = std::max({1.0, std::abs(spec_.a), std::abs(spec_.b)});
    return std::any_of(spec_.xi.begin(), spec_.xi.end(),
                       [&](double xi) { return std::abs(x - xi) <= rel_tol * scale; });
}

namespace {

void require_finite(double v, const std::string& what) {
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFiniteCoefficient, what + " is not finite");
    }
}

}  // namespace

ValidatedProblem validate_problem(ProblemSpec spec) {
    const std::size_t n = spec.xi.size();
    if (spec.rho.size() != n + 1 || spec.q.size() != n + 1 || spec.trans.size() != n) {
        throw Error(ErrorCode::ShapeMismatch,
                    "with " + std::to_string(n) + " interior points expected " + std::to_string(n + 1) +
                        " rho values, " + std::to_string(n + 1) + " potentials and " + std::to_string(n) +
                        " transmission matrices (got " + std::to_string(spec.rho.size()) + ", " +
                        std::to_string(spec.q.size()) + ", " + std::to_string(spec.trans.size()) + ")");
    }

    require_finite(spec.a, "a");
    require_finite(spec.b, "b");
    for (double x : spec.xi) require_finite(x, "interior point");
    for (double d : spec.delta) require_finite(d, "delta coefficient");
    for (double g : spec.gamma) require_finite(g, "gamma coefficient");
    for (std::size_t s = 0; s <= n; ++s) {
        require_finite(spec.rho[s], "rho_" + std::to_string(s + 1));
        for (double c : spec.q[s].coefficients) require_finite(c, "potential coefficient on piece " + std::to_string(s + 1));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (double c : spec.trans[i].row1) require_finite(c, "transmission coefficient");
        for (double c : spec.trans[i].row2) require_finite(c, "transmission coefficient");
    }

    double prev = spec.a;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(spec.xi[i] > prev)) {
            throw Error(ErrorCode::NonIncreasingPartition,
                        "interior point " + std::to_string(i + 1) + " (" + std::to_string(spec.xi[i]) +
                            ") does not exceed its predecessor",
                        static_cast<int>(i + 1));
        }
        prev = spec.xi[i];
    }
    if (!(spec.b > prev)) {
        throw Error(ErrorCode::NonIncreasingPartition, "right endpoint b must exceed every other partition point");
    }

    for (std::size_t s = 0; s <= n; ++s) {
        if (!(spec.rho[s] > 0)) {
            throw Error(ErrorCode::NonPositiveRho, "rho_" + std::to_string(s + 1) + " must be positive",
                        static_cast<int>(s + 1));
        }
    }

    ValidatedProblem p;
    p.theta_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ThetaMinors t = ThetaMinors::of(spec.trans[i]);
        if (!(t.t12 > 0) || !(t.t34 > 0)) {
            throw Error(ErrorCode::ThetaDegenerate,
                        "interface " + std::to_string(i + 1) + ": theta12 = " + std::to_string(t.t12) +
                            ", theta34 = " + std::to_string(t.t34) + " (both must be positive)",
                        static_cast<int>(i + 1));
        }
        p.theta_.push_back(t);
    }

    const auto& d = spec.delta;
    const auto& g = spec.gamma;
    p.kappa1_ = d[2] * d[1] - d[3] * d[0];
    p.kappa2_ = g[2] * g[1] - g[3] * g[0];
    if (!(p.kappa1_ > 0)) {
        throw Error(ErrorCode::KappaNonPositive,
                    "left end: kappa1 = delta3*delta2 - delta4*delta1 = " + std::to_string(p.kappa1_) +
                        " must be positive");
    }
    if (!(p.kappa2_ > 0)) {
        throw Error(ErrorCode::KappaNonPositive,
                    "right end: kappa2 = gamma3*gamma2 - gamma4*gamma1 = " + std::to_string(p.kappa2_) +
                        " must be positive");
    }

    p.weights_.resize(n + 1);
    for (std::size_t s = 0; s <= n; ++s) {
        double w = 1.0 / (spec.rho[s] * spec.rho[s]);
        for (std::size_t i = 0; i < s; ++i) w *= p.theta_[i].t12;
        for (std::size_t i = s; i < n; ++i) w *= p.theta_[i].t34;
        p.weights_[s] = w;
    }
    p.left_boundary_weight_ = 1;
    p.right_boundary_weight_ = 1;
    for (const auto& t : p.theta_) {
        p.left_boundary_weight_ *= t.t34;
        p.right_boundary_weight_ *= t.t12;
    }

    // V_s rho_s^2 prod_{j<s}(theta_j34/theta_j12) must not depend on s.
    const double reference = p.weights_[0] * spec.rho[0] * spec.rho[0];
    for (std::size_t s = 1; s <= n; ++s) {
        double v = p.weights_[s] * spec.rho[s] * spec.rho[s];
        for (std::size_t j = 0; j < s; ++j) v *= p.theta_[j].t34 / p.theta_[j].t12;
        if (std::abs(v - reference) > 1e-12 * std::abs(reference)) {
            throw Error(ErrorCode::ThetaDegenerate,
                        "interval weights lost their product identity at piece " + std::to_string(s + 1),
                        static_cast<int>(s + 1));
        }
    }

    p.spec_ = std::move(spec);
    return p;
}

namespace fixtures {

ProblemSpec p0() {
    ProblemSpec s;
    s.a = 0;
    s.b = 1;
    s.rho = {1};
    s.q = {Polynomial{{0}}};
    s.delta = {1, 0, 0, -1};
    s.gamma = {1, 0, 0, -1};
    return s;
}

ProblemSpec p1() {
    ProblemSpec s = p0();
    s.xi = {0.5};
    s.rho = {1, 1};
    s.q = {Polynomial{{0}}, Polynomial{{0}}};
    s.trans = {TransmissionMatrix{{1, 0, -1, 0}, {0, 1, 0, -1}}};
    return s;
}

ProblemSpec p2() {
    ProblemSpec s;
    s.a = -1;
    s.b = 1;
    s.xi = {0};
    s.rho = {1, 2};
    s.q = {Polynomial{{0}}, Polynomial{{0}}};
    s.delta = {1, 0, 0, -1};
    s.gamma = {1, 0, 0, -1};
    s.trans = {TransmissionMatrix{{1, 0, -0.5, 0}, {0, 1, 0, -2}}};
    return s;
}

}  // namespace fixtures

}  // namespace bvtp
