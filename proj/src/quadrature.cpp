#include "bvtp/quadrature.hpp"

#include "bvtp/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace bvtp {

namespace {

constexpr int kPanelOrder = 10;
constexpr int kMaxRefinements = 14;

GaussRule build_rule(int order) {
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        // Newton iteration on P_order from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2 / ((1 - x * x) * dp * dp);
    }
    return rule;
}

Complex panel_sum(const ScalarFunction& f, double lo, double hi, const GaussRule& rule) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    Complex acc = 0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
    return acc * half;
}

struct PanelResult {
    std::vector<Complex> panels;
    Complex total{};
    double error = 0;
};

PanelResult converge(const ScalarFunction& f, double lo, double hi, double tol, std::size_t initial_panels) {
    if (!(hi > lo)) return {{}, 0, 0};
    const GaussRule& rule = gauss_legendre(kPanelOrder);
    auto sweep = [&](std::size_t count) {
        PanelResult r;
        r.panels.resize(count);
        const double width = (hi - lo) / static_cast<double>(count);
        for (std::size_t p = 0; p < count; ++p) {
            const double a = lo + width * static_cast<double>(p);
            const double b = p + 1 == count ? hi : a + width;
            r.panels[p] = panel_sum(f, a, b, rule);
            r.total += r.panels[p];
        }
        return r;
    };

    std::size_t count = std::max<std::size_t>(initial_panels, 1);
    PanelResult previous = sweep(count);
    for (int level = 0; level < kMaxRefinements; ++level) {
        count *= 2;
        PanelResult current = sweep(count);
        current.error = std::abs(current.total - previous.total);
        if (!std::isfinite(current.error)) break;
        if (current.error < tol * std::max(1.0, std::abs(current.total))) return current;
        previous = std::move(current);
    }
    throw Error(ErrorCode::QuadratureFailure, "composite Gauss rule did not settle on [" + std::to_string(lo) + ", " +
                                                  std::to_string(hi) + "]");
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
    return it->second;
}

QuadratureResult integrate(const ScalarFunction& f, double lo, double hi, double tol, std::size_t initial_panels) {
    PanelResult r = converge(f, lo, hi, tol, initial_panels);
    return {r.total, r.error, r.panels.size()};
}

CumulativeIntegral::CumulativeIntegral(ScalarFunction f, double lo, double hi, double tol)
    : f_(std::move(f)), lo_(lo), hi_(hi), width_(0) {
    PanelResult r = converge(f_, lo, hi, tol, 8);
    prefix_.assign(r.panels.size() + 1, Complex{});
    for (std::size_t p = 0; p < r.panels.size(); ++p) prefix_[p + 1] = prefix_[p] + r.panels[p];
    total_ = r.total;
    error_ = r.error;
    width_ = r.panels.empty() ? 0 : (hi - lo) / static_cast<double>(r.panels.size());
}

Complex CumulativeIntegral::from_lo(double x) const {
    if (width_ == 0 || x <= lo_) return 0;
    if (x >= hi_) return total_;
    const std::size_t panels = prefix_.size() - 1;
    std::size_t p = std::min(panels - 1, static_cast<std::size_t>((x - lo_) / width_));
    const double start = lo_ + width_ * static_cast<double>(p);
    if (x == start) return prefix_[p];
    return prefix_[p] + panel_sum(f_, start, x, gauss_legendre(kPanelOrder));
}

}  // namespace bvtp
