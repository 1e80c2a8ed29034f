#include "bvtp/expansion.hpp"

#include "bvtp/error.hpp"
#include "bvtp/hilbert.hpp"
#include "detail/parallel.hpp"

#include <string>

namespace bvtp {

std::vector<Eigenfunction> eigenbasis(const ValidatedProblem& problem, const Spectrum& spectrum, std::size_t count,
                                      const EigenfunctionOptions& options) {
    if (spectrum.eigenvalues.size() < count) {
        throw Error(ErrorCode::InsufficientEigenvalues,
                    "requested " + std::to_string(count) + " eigenfunctions but the window holds " +
                        std::to_string(spectrum.eigenvalues.size()) + " eigenvalues");
    }
    std::vector<Eigenfunction> basis(count);
    detail::parallel_for(count, [&](std::size_t s) {
        basis[s] = eigenfunction(problem, spectrum.eigenvalues[s], options);
    });
    return basis;
}

ExpansionResult expand(const ValidatedProblem& problem, const AugmentedFunction& F,
                       std::span<const Eigenfunction> basis, std::size_t N, double quad_tol) {
    if (basis.size() < N) {
        throw Error(ErrorCode::InsufficientEigenvalues, "expansion needs " + std::to_string(N) +
                                                            " eigenfunctions, have " + std::to_string(basis.size()));
    }
    ExpansionResult out;
    out.truncation = N;
    out.coefficients.resize(N);
    detail::parallel_for(N, [&](std::size_t s) {
        out.coefficients[s] = inner_h(problem, F, basis[s].psi, quad_tol).total;
    });
    AugmentedFunction remainder = F;
    for (std::size_t s = 0; s < N; ++s) {
        out.eigenvalues.push_back(basis[s].lambda);
        remainder = remainder - basis[s].psi.scaled(out.coefficients[s]);
    }
    out.l2_residual = norm_h(problem, remainder, quad_tol);
    return out;
}

ExpansionResult expand(const ValidatedProblem& problem, const AugmentedFunction& F, std::size_t N, Window window,
                       const ExpansionOptions& options) {
    const Spectrum spectrum = eigenvalues(problem, window, options.grid, options.roots);
    const auto basis = eigenbasis(problem, spectrum, N, options.eigenfunctions);
    return expand(problem, F, basis, N, options.quad_tol);
}

}  // namespace bvtp
