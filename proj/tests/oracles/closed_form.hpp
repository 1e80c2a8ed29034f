#pragma once

// Independent reference values for the test suites. Nothing here calls the
// library: q = 0 on every fixture piece, so each solution is trigonometric and
// the interface jump is written out by hand.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using C = std::complex<double>;

/// sin(s x) / s, continued to s = 0.
inline C sinc_scaled(C s, double x) {
    if (std::abs(s * x) < 1e-4) {
        const C z = s * s * x * x;
        return x * (1.0 - z / 6.0 + z * z / 120.0);
    }
    return std::sin(s * x) / s;
}

/// Value and slope of the solution of u'' = -(lambda / r2) u with u(x0) = u0, u'(x0) = du0.
struct Pair {
    C u;
    C du;
};
inline Pair propagate(C lambda, double r2, double x0, Pair start, double x) {
    const C k = std::sqrt(lambda / r2);
    const double t = x - x0;
    const C c = std::cos(k * t);
    const C sk = sinc_scaled(k, t);
    return {start.u * c + start.du * sk, -start.u * k * k * sk + start.du * c};
}

// ---- P0: [0,1], u(0) - lambda u'(0) = 0, u(1) + lambda u'(1) = 0 ----

inline Pair p0_phi(C lambda, double x) { return propagate(lambda, 1.0, 0.0, {lambda, 1.0}, x); }
inline Pair p0_chi(C lambda, double x) { return propagate(lambda, 1.0, 1.0, {-lambda, 1.0}, x); }

/// 2 lambda cos s + (1/s - lambda^2 s) sin s, s = sqrt(lambda), for real lambda of either sign.
inline double p0_omega(double lambda) {
    if (lambda > 0) {
        const double s = std::sqrt(lambda);
        return 2 * lambda * std::cos(s) + (1 / s - lambda * lambda * s) * std::sin(s);
    }
    if (lambda < 0) {
        const double t = std::sqrt(-lambda);
        return 2 * lambda * std::cosh(t) + (1 / t + lambda * lambda * t) * std::sinh(t);
    }
    return 1.0;
}

// ---- P2: [-1,1], rho = (1, 2), u(0+) = 2 u(0-), u'(0+) = u'(0-)/2 ----

inline Pair p2_phi(C lambda, int piece, double x) {
    const Pair left = propagate(lambda, 1.0, -1.0, {lambda, 1.0}, piece == 0 ? x : 0.0);
    if (piece == 0) return left;
    return propagate(lambda, 4.0, 0.0, {2.0 * left.u, 0.5 * left.du}, x);
}
inline Pair p2_chi(C lambda, int piece, double x) {
    const Pair right = propagate(lambda, 4.0, 1.0, {-lambda, 1.0}, piece == 1 ? x : 0.0);
    if (piece == 1) return right;
    return propagate(lambda, 1.0, 0.0, {0.5 * right.u, 2.0 * right.du}, x);
}
/// Wronskian of phi and chi on the left piece (equal to the right-piece one since both minors are 1).
inline C p2_omega(C lambda) {
    const Pair f = p2_phi(lambda, 0, -0.5);
    const Pair g = p2_chi(lambda, 0, -0.5);
    return f.u * g.du - f.du * g.u;
}

// ---- generic numerics ----

/// Plain bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200) {
    double flo = f(lo);
    for (int k = 0; k < iterations && hi - lo > 0; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Roots of f found by scanning `samples` uniform points and bisecting each sign change.
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi, int samples) {
    std::vector<double> roots;
    double x0 = lo;
    double f0 = f(x0);
    for (int i = 1; i < samples; ++i) {
        const double x1 = lo + (hi - lo) * i / (samples - 1);
        const double f1 = f(x1);
        if ((f0 < 0) != (f1 < 0)) roots.push_back(bisect(f, x0, x1));
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

/// Composite Simpson rule with `panels` (even) subintervals.
inline C simpson(const std::function<C(double)>& f, double lo, double hi, int panels = 2000) {
    const double h = (hi - lo) / panels;
    C acc = f(lo) + f(hi);
    for (int k = 1; k < panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(lo + k * h);
    return acc * h / 3.0;
}

}  // namespace oracle
