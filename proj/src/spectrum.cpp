#include "bvtp/spectrum.hpp"

#include "bvtp/error.hpp"
#include "bvtp/hilbert.hpp"
#include "detail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bvtp {

namespace {

double real_characteristic(const ValidatedProblem& problem, double lambda, double tol) {
    const Complex w = characteristic(problem, lambda, tol);
    if (std::abs(w.imag()) > 1e-10 * std::max(std::abs(w), std::numeric_limits<double>::min())) {
        std::ostringstream os;
        os << "omega(" << lambda << ") has imaginary part " << w.imag() << " for real lambda";
        throw Error(ErrorCode::ConsistencyViolation, os.str());
    }
    return w.real();
}

bool opposite_signs(double x, double y) { return (x < 0 && y > 0) || (x > 0 && y < 0); }

}  // namespace

std::vector<CharacteristicSample> sample_characteristic(const ValidatedProblem& problem, Window window,
                                                        std::size_t count, double tol) {
    if (count < 2) throw Error(ErrorCode::InvalidArgument, "at least two samples are needed");
    if (!(window.lo < window.hi)) throw Error(ErrorCode::InvalidArgument, "window must satisfy lo < hi");
    std::vector<CharacteristicSample> samples(count);
    const double step = (window.hi - window.lo) / static_cast<double>(count - 1);
    detail::parallel_for(count, [&](std::size_t i) {
        const double lambda = i + 1 == count ? window.hi : window.lo + step * static_cast<double>(i);
        samples[i] = {lambda, real_characteristic(problem, lambda, tol)};
    });
    return samples;
}

std::vector<Bracket> bracket_roots(std::span<const CharacteristicSample> samples) {
    std::vector<Bracket> brackets;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].omega == 0) {
            brackets.push_back({samples[i].lambda, samples[i].lambda, 0, 0});
            continue;
        }
        if (i + 1 < samples.size() && opposite_signs(samples[i].omega, samples[i + 1].omega)) {
            brackets.push_back({samples[i].lambda, samples[i + 1].lambda, samples[i].omega, samples[i + 1].omega});
        }
    }
    return brackets;
}

RefinedRoot refine_root(const ValidatedProblem& problem, const Bracket& bracket, const RootOptions& options) {
    auto f = [&](double lambda) { return real_characteristic(problem, lambda, options.ivp_tol); };
    auto width_tol = [&](double lambda) { return options.lambda_tol * std::max(1.0, std::abs(lambda)); };

    if (bracket.degenerate()) {
        const double h = width_tol(bracket.lo);
        const double left = f(bracket.lo - h);
        const double right = f(bracket.lo + h);
        if (!(opposite_signs(left, right) || left == 0 || right == 0)) {
            std::ostringstream os;
            os << "omega vanishes at " << bracket.lo << " without a sign change; multiplicity unknown";
            throw Error(ErrorCode::MaxIterations, os.str());
        }
        return {bracket.lo, std::abs(f(bracket.lo)), bracket, 1};
    }

    double a = bracket.lo;
    double b = bracket.hi;
    double fa = f(a);
    double fb = f(b);
    if (!opposite_signs(fa, fb)) {
        if (fa == 0) return {a, 0, bracket, 0};
        if (fb == 0) return {b, 0, bracket, 0};
        std::ostringstream os;
        os << "omega has the same sign at " << a << " and " << b;
        throw Error(ErrorCode::NoSignChange, os.str());
    }
    const double omega_scale = std::max(std::abs(fa), std::abs(fb));
    double c = b;
    double fc = fb;
    double d = b - a;
    double e = d;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        if ((fb > 0 && fc > 0) || (fb < 0 && fc < 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2 * eps * std::abs(b) + 0.5 * width_tol(b);
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0) {
            if (std::abs(fb) > options.omega_tol * omega_scale) {
                std::ostringstream os;
                os << "bracket collapsed at " << b << " but |omega| = " << std::abs(fb) << " is still large";
                throw Error(ErrorCode::MaxIterations, os.str());
            }
            return {b, std::abs(fb), bracket, iter};
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2 * xm * s;
                q = 1 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2 * xm * qq * (qq - r) - (b - a) * (r - 1));
                q = (qq - 1) * (r - 1) * (s - 1);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            const double min1 = 3 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    std::ostringstream os;
    os << "root in [" << bracket.lo << ", " << bracket.hi << "] not resolved after " << options.max_iterations
       << " iterations";
    throw Error(ErrorCode::MaxIterations, os.str());
}

Spectrum eigenvalues(const ValidatedProblem& problem, Window window, std::size_t grid, const RootOptions& options) {
    const auto samples = sample_characteristic(problem, window, grid, options.ivp_tol);
    const auto brackets = bracket_roots(samples);
    std::vector<RefinedRoot> roots(brackets.size());
    detail::parallel_for(brackets.size(), [&](std::size_t i) { roots[i] = refine_root(problem, brackets[i], options); });
    std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) { return x.lambda < y.lambda; });

    Spectrum out;
    out.window = window;
    out.grid_points = grid;
    for (const RefinedRoot& r : roots) {
        if (!out.eigenvalues.empty()) {
            const double prev = out.eigenvalues.back();
            const double tol = options.lambda_tol * std::max(1.0, std::abs(r.lambda));
            if (r.lambda - prev < tol) continue;
            if (r.lambda - prev < 100 * tol) {
                std::ostringstream os;
                os << "roots " << prev << " and " << r.lambda << " are closer than 100 times the tolerance";
                out.warnings.push_back(os.str());
            }
        }
        out.eigenvalues.push_back(r.lambda);
        out.roots.push_back(r);
    }
    return out;
}

Eigenfunction eigenfunction(const ValidatedProblem& problem, double lambda_k, const EigenfunctionOptions& options) {
    auto phi = std::make_shared<const PiecewiseSolution>(build_phi(problem, lambda_k, options.ivp_tol));

    const ValuePair end = phi->at_b();
    const auto& g = problem.spec().gamma;
    // Sizes along the last piece: the endpoint values alone can both be tiny after cancellation.
    const SolutionTrace& last = phi->piece(phi->piece_count() - 1);
    double u_size = 0;
    double du_size = 0;
    for (std::size_t k = 0; k < last.nodes().size(); ++k) {
        u_size = std::max(u_size, std::abs(last.node_value(k).u));
        du_size = std::max(du_size, std::abs(last.node_value(k).du));
    }
    const double terms = (std::abs(g[0]) + std::abs(lambda_k * g[2])) * u_size +
                         (std::abs(g[1]) + std::abs(lambda_k * g[3])) * du_size;
    const double residual = terms > 0 ? std::abs(right_condition(problem, end, lambda_k)) / terms : 0.0;
    if (!(residual <= options.residual_tol)) {
        std::ostringstream os;
        os << "right boundary residual " << residual << " at lambda = " << lambda_k;
        throw Error(ErrorCode::NotAnEigenvalue, os.str());
    }

    const AugmentedFunction raw = augment(problem, PiecewiseFunction::from_solution(phi));
    const double norm = norm_h(problem, raw, options.quad_tol);
    if (!(norm > 0)) throw Error(ErrorCode::NotAnEigenvalue, "eigenfunction has zero norm");

    Complex peak = 0;
    const std::size_t n = std::max<std::size_t>(options.phase_samples, 2);
    for (std::size_t s = 0; s < problem.piece_count(); ++s) {
        const double lo = problem.piece_lo(s);
        const double step = (problem.piece_hi(s) - lo) / static_cast<double>(n - 1);
        for (std::size_t k = 0; k < n; ++k) {
            const double x = k + 1 == n ? problem.piece_hi(s) : lo + step * static_cast<double>(k);
            const Complex v = (*phi)(s, x).u;
            if (std::abs(v) > std::abs(peak)) peak = v;
        }
    }
    const Complex phase = std::abs(peak) > 0 ? std::conj(peak) / std::abs(peak) : Complex{1};
    const Complex scale = phase / norm;
    return {lambda_k, raw.scaled(scale), phi, scale, residual};
}

}  // namespace bvtp
