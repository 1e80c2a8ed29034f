#include "verify.hpp"

#include "bvtp/error.hpp"
#include "bvtp/expansion.hpp"
#include "bvtp/fd_oracle.hpp"
#include "bvtp/fundamental.hpp"
#include "bvtp/hilbert.hpp"
#include "bvtp/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace bvtp::cli {

namespace {

/// Evaluates `measure` and turns exceptions into failed checks.
CheckResult check(std::string name, double threshold, const std::function<double(std::string&)>& measure) {
    CheckResult r{std::move(name), false, 0, threshold, ""};
    try {
        r.value = measure(r.detail);
        r.passed = r.value < threshold;
    } catch (const std::exception& e) {
        r.value = std::numeric_limits<double>::infinity();
        r.detail = e.what();
    }
    return r;
}

PiecewiseFunction monomial(const ValidatedProblem& problem, int degree) {
    std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = 1;
    return PiecewiseFunction::polynomial(problem.piece_count(), Polynomial{c});
}

/// Interior grid of `count` points that avoids interface points.
std::vector<double> off_interface_grid(const ValidatedProblem& problem, std::size_t count) {
    std::vector<double> xs;
    const double len = problem.b() - problem.a();
    for (std::size_t i = 0; i < count; ++i) {
        double x = problem.a() + len * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
        if (problem.is_interface_point(x, 1e-9)) x += 1e-3 * len / static_cast<double>(count);
        xs.push_back(x);
    }
    return xs;
}

}  // namespace

std::vector<CheckResult> run_verification(const ValidatedProblem& problem, const VerifyOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> real_lambda(-10.0, 100.0);
    std::vector<CheckResult> out;

    out.push_back(check("wronskian_recursion", 1e-9, [&](std::string& detail) {
        std::vector<Complex> lambdas;
        for (int k = 0; k < 50; ++k) lambdas.emplace_back(real_lambda(rng));
        for (Complex l : {Complex(0, 3), Complex(0, -3), Complex(1, 2)}) lambdas.push_back(l);
        double worst = 0;
        for (Complex l : lambdas) worst = std::max(worst, build_fundamental_system(problem, l).max_recursion_violation);
        detail = std::to_string(lambdas.size()) + " lambdas";
        return worst;
    }));

    out.push_back(check("boundary_identities", 1e-12, [&](std::string& detail) {
        double worst = 0;
        auto random_pair = [&] { return ValuePair{Complex(unit(rng), unit(rng)), Complex(unit(rng), unit(rng))}; };
        for (int k = 0; k < 100; ++k) {
            const auto [left, right] = boundary_identity_check(problem, random_pair(), random_pair(), random_pair(),
                                                               random_pair());
            worst = std::max({worst, left, right});
        }
        detail = "100 random endpoint datasets";
        return worst;
    }));

    out.push_back(check("transmission_wronskian", 1e-9, [&](std::string& detail) {
        double worst = 0;
        for (int k = 0; k < 20; ++k) {
            const double l = real_lambda(rng);
            const auto phi = PiecewiseFunction::from_solution(build_phi(problem, l));
            const auto chi = PiecewiseFunction::from_solution(build_chi(problem, l));
            for (std::size_t i = 0; i < problem.interface_count(); ++i) {
                worst = std::max(worst, wronskian_transmission_identity(problem, phi, chi, i));
            }
        }
        detail = std::to_string(problem.interface_count()) + " interfaces, 20 lambdas";
        return worst;
    }));

    Spectrum spectrum;
    out.push_back(check("spectrum", 0.5, [&](std::string& detail) {
        spectrum = eigenvalues(problem, options.window, options.grid);
        detail = std::to_string(spectrum.eigenvalues.size()) + " eigenvalues in window";
        for (const auto& w : spectrum.warnings) detail += "; " + w;
        return spectrum.eigenvalues.size() >= 5 ? 0.0 : 1.0;
    }));

    out.push_back(check("gram_matrix", 1e-5, [&](std::string& detail) {
        const auto basis = eigenbasis(problem, spectrum, 4);
        double worst = 0;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            for (std::size_t k = 0; k < basis.size(); ++k) {
                const Complex g = inner_h(problem, basis[j].psi, basis[k].psi, 1e-12).total;
                worst = std::max(worst, std::abs(g - (j == k ? 1.0 : 0.0)));
            }
        }
        detail = "first 4 eigenfunctions";
        return worst;
    }));

    out.push_back(check("oracle_agreement", 1.0, [&](std::string& detail) {
        const std::size_t ladder[] = {200, 400, 800};
        const OracleSpectrum oracle = oracle_eigenvalues(problem, ladder, 5);
        if (spectrum.eigenvalues.size() < 5 || oracle.eigenvalues.size() < 5) {
            throw Error(ErrorCode::InsufficientEigenvalues, "need 5 eigenvalues from both methods");
        }
        double worst = 0;
        std::ostringstream os;
        for (std::size_t k = 0; k < 5; ++k) {
            const auto& e = oracle.eigenvalues[k];
            const double ratio = std::abs(spectrum.eigenvalues[k] - e.value) / e.error_estimate;
            worst = std::max(worst, e.error_estimate < 1e-4 ? ratio : std::numeric_limits<double>::infinity());
            os << (k ? " " : "") << "|d|/est=" << ratio;
        }
        detail = os.str();
        return worst;
    }));

    for (double lambda : {-1.0, -3.0}) {
        const std::string tag = "resolvent(lambda=" + std::to_string(static_cast<int>(lambda)) + ")";
        std::shared_ptr<ResolventSolution> solution;
        const auto one = PiecewiseFunction::constant(problem.piece_count(), 1.0);
        out.push_back(check(tag + ".ode", 1e-6, [&](std::string&) {
            solution = std::make_shared<ResolventSolution>(solve_resolvent(problem, lambda, one));
            return solution->residual_ode;
        }));
        if (!solution) continue;
        out.push_back(check(tag + ".boundary", 1e-6, [&](std::string&) { return solution->residual_bc; }));
        out.push_back(check(tag + ".transmission", 1e-7, [&](std::string&) { return solution->residual_trans; }));
        out.push_back(check(tag + ".oracle", 1e-5, [&](std::string& detail) {
            const GridFunction fd = oracle_solve(problem, lambda, one, 2000);
            detail = "sup distance to the 2000-interval finite-difference solve";
            return fd.sup_distance(solution->u);
        }));
    }

    out.push_back(check("kernel_symmetry", 1e-8, [&](std::string& detail) {
        const GreenKernel kernel(problem, -2.0);
        const auto xs = off_interface_grid(problem, 15);
        double worst = 0;
        for (double x : xs) {
            for (double y : xs) {
                const auto g = kernel(x, y);
                const auto gt = kernel(y, x);
                const Complex lhs = problem.interval_weight(g.piece_x) * g.value;
                const Complex rhs = problem.interval_weight(gt.piece_x) * gt.value;
                const double denom = std::max(std::abs(lhs), std::abs(rhs));
                if (denom > 0) worst = std::max(worst, std::abs(lhs - rhs) / denom);
            }
        }
        detail = "15x15 grid at lambda=-2";
        return worst;
    }));

    out.push_back(check("resolvent_selfadjointness", 1e-6, [&](std::string& detail) {
        const auto one = monomial(problem, 0);
        const double r1 = resolvent_selfadjointness_check(problem, -1.0, one, monomial(problem, 1));
        const double r2 = resolvent_selfadjointness_check(problem, -1.0, one, monomial(problem, 2));
        detail = "(1,x) and (1,x^2) at lambda=-1";
        return std::max(r1, r2);
    }));

    return out;
}

}  // namespace bvtp::cli
