#include "bvtp/ivp.hpp"

#include "bvtp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bvtp {

namespace {

// Number of Taylor terms kept per step (degree of the dense-output polynomial).
constexpr int kOrder = 28;
// Cap on |local wavenumber| * |h|; keeps term growth and cancellation bounded.
constexpr double kMaxPhase = 3.5;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

ValuePair evaluate_series(const std::vector<Complex>& a, double t) {
    Complex u = 0;
    Complex du = 0;
    for (std::size_t k = a.size(); k-- > 0;) {
        u = u * t + a[k];
        if (k > 0) du = du * t + static_cast<double>(k) * a[k];
    }
    return {u, du};
}

}  // namespace

ValuePair SolutionTrace::operator()(double x) const {
    const double span = nodes_.back() - nodes_.front();
    const double slack = 1e-14 * std::max(span, std::max(std::abs(nodes_.front()), std::abs(nodes_.back())));
    if (x < nodes_.front() - slack || x > nodes_.back() + slack) {
        throw Error(ErrorCode::DomainMismatch, "x = " + std::to_string(x) + " outside trace interval [" +
                                                   std::to_string(nodes_.front()) + ", " +
                                                   std::to_string(nodes_.back()) + "]");
    }
    x = std::clamp(x, nodes_.front(), nodes_.back());
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    std::size_t k = static_cast<std::size_t>(it - nodes_.begin());
    if (k > 0 && nodes_[k - 1] == x) return node_values_[k - 1];
    if (k == nodes_.size()) return node_values_.back();
    const Step& step = steps_[k - 1];
    return evaluate_series(step.coeffs, x - step.x0);
}

SolutionTrace integrate_ivp(const ValidatedProblem& problem, std::size_t piece, Complex lambda, StartPoint start,
                            ValuePair init, double tol) {
    if (piece >= problem.piece_count()) {
        throw Error(ErrorCode::InvalidArgument, "piece index " + std::to_string(piece + 1) + " out of range");
    }
    if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "integration tolerance must be positive");
    if (!finite(init.u) || !finite(init.du) || !finite(lambda)) {
        throw Error(ErrorCode::NonFiniteState, "non-finite initial data", static_cast<int>(piece + 1));
    }

    const double lo = problem.piece_lo(piece);
    const double hi = problem.piece_hi(piece);
    const double length = hi - lo;
    const double dir = start == StartPoint::Left ? 1.0 : -1.0;
    const double x_end = start == StartPoint::Left ? hi : lo;
    const double inv_rho2 = 1.0 / problem.rho2(piece);
    const Polynomial& q = problem.q(piece);
    const double h_cap = length / 8;

    SolutionTrace trace;
    trace.piece_ = piece;
    trace.start_ = start;
    trace.lambda_ = lambda;
    trace.tol_ = tol;

    std::vector<double> xs{start == StartPoint::Left ? lo : hi};
    std::vector<ValuePair> values{init};
    std::vector<SolutionTrace::Step> steps;

    double x = xs.front();
    ValuePair y = init;
    std::vector<Complex> c;
    std::vector<Complex> a(kOrder + 1);

    while (true) {
        const double remaining = std::abs(x_end - x);
        if (remaining <= 1e-15 * std::max(length, std::abs(x_end))) break;

        // Coefficients of (q(x + t) - lambda) / rho^2 in t.
        const Polynomial qs = q.shifted(x);
        c.assign(qs.coefficients.size(), Complex{});
        for (std::size_t j = 0; j < qs.coefficients.size(); ++j) c[j] = qs.coefficients[j] * inv_rho2;
        if (c.empty()) c.push_back(0);
        c[0] -= lambda * inv_rho2;

        a[0] = y.u;
        a[1] = y.du;
        for (int k = 0; k + 2 <= kOrder; ++k) {
            Complex acc = 0;
            const int jmax = std::min<int>(k, static_cast<int>(c.size()) - 1);
            for (int j = 0; j <= jmax; ++j) acc += c[j] * a[k - j];
            a[k + 2] = acc / (static_cast<double>(k + 1) * static_cast<double>(k + 2));
        }

        // Local wavenumber from the bound on |c| over the remaining piece.
        double cmax = std::abs(c[0]);
        for (std::size_t j = 1; j < c.size(); ++j) cmax += std::abs(c[j]) * std::pow(remaining, static_cast<double>(j));
        const double wavenumber = std::sqrt(cmax);
        const double ref_rate = std::max(wavenumber, 1.0 / length);
        const double scale = std::max(std::abs(y.u), std::abs(y.du) / ref_rate);

        double h = std::min(h_cap, remaining);
        if (wavenumber > 0) h = std::min(h, kMaxPhase / wavenumber);

        if (scale > 0) {
            auto tail = [&](double hh) {
                const double p1 = std::abs(a[kOrder - 1]) * std::pow(hh, kOrder - 1);
                const double p0 = std::abs(a[kOrder]) * std::pow(hh, kOrder);
                const double d1 = (kOrder - 1) * std::abs(a[kOrder - 1]) * std::pow(hh, kOrder - 2);
                const double d0 = kOrder * std::abs(a[kOrder]) * std::pow(hh, kOrder - 1);
                return std::max(p1 + p0, (d1 + d0) / ref_rate);
            };
            while (tail(h) > tol * scale * (h / length)) {
                h *= 0.7;
                if (h < 1e-12 * length) {
                    throw Error(ErrorCode::StepSizeUnderflow,
                                "step size underflow at x = " + std::to_string(x) + " on piece " +
                                    std::to_string(piece + 1),
                                static_cast<int>(piece + 1));
                }
            }
        }

        const bool last = h >= remaining;
        const double x_next = last ? x_end : x + dir * h;
        ValuePair next = evaluate_series(a, x_next - x);
        if (!finite(next.u) || !finite(next.du)) {
            throw Error(ErrorCode::NonFiniteState,
                        "non-finite state reached at x = " + std::to_string(x) + " on piece " +
                            std::to_string(piece + 1),
                        static_cast<int>(piece + 1));
        }

        steps.push_back({x, a});
        xs.push_back(x_next);
        values.push_back(next);
        x = x_next;
        y = next;
        if (last) break;
    }

    if (start == StartPoint::Right) {
        std::reverse(xs.begin(), xs.end());
        std::reverse(values.begin(), values.end());
        std::reverse(steps.begin(), steps.end());
    }
    trace.nodes_ = std::move(xs);
    trace.node_values_ = std::move(values);
    trace.steps_ = std::move(steps);
    return trace;
}

Complex wronskian_at(const SolutionTrace& t1, const SolutionTrace& t2, double x) {
    if (t1.piece() != t2.piece() || t1.lambda() != t2.lambda() || t1.x_lo() != t2.x_lo() || t1.x_hi() != t2.x_hi()) {
        throw Error(ErrorCode::DomainMismatch, "Wronskian needs traces of the same piece and spectral parameter");
    }
    return wronskian(t1(x), t2(x));
}

}  // namespace bvtp
