#include "bvtp/fd_oracle.hpp"

#include "bvtp/error.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace bvtp {

namespace {

constexpr double kInfiniteCutoff = 1e12;
constexpr std::size_t kShiftEstimateIntervals = 32;

using Triplets = std::vector<Eigen::Triplet<double>>;

struct Stencil {
    std::size_t nodes[3];
    double weights[3];
};

/// Second-order one-sided first derivative at the first node of a piece.
Stencil forward_slope(const PencilPair& p, std::size_t piece, double h) {
    return {{p.index(piece, 0), p.index(piece, 1), p.index(piece, 2)}, {-1.5 / h, 2.0 / h, -0.5 / h}};
}

/// Second-order one-sided first derivative at the last node of a piece.
Stencil backward_slope(const PencilPair& p, std::size_t piece, double h) {
    const std::size_t n = p.intervals;
    return {{p.index(piece, n), p.index(piece, n - 1), p.index(piece, n - 2)}, {1.5 / h, -2.0 / h, 0.5 / h}};
}

void add(Triplets& t, std::size_t row, std::size_t col, double value) {
    if (value != 0) t.emplace_back(static_cast<int>(row), static_cast<int>(col), value);
}

void add(Triplets& t, std::size_t row, const Stencil& s, double factor) {
    for (int k = 0; k < 3; ++k) add(t, row, s.nodes[k], factor * s.weights[k]);
}

PencilSpectrum select_smallest(std::vector<std::complex<double>> values, std::size_t count) {
    std::sort(values.begin(), values.end(), [](const auto& x, const auto& y) { return x.real() < y.real(); });
    PencilSpectrum out;
    for (std::size_t k = 0; k < std::min(count, values.size()); ++k) {
        out.eigenvalues.push_back(values[k].real());
        out.max_imag = std::max(out.max_imag, std::abs(values[k].imag()) / std::max(1.0, std::abs(values[k])));
    }
    return out;
}

}  // namespace

PencilPair assemble_pencil(const ValidatedProblem& problem, std::size_t intervals) {
    if (intervals < 8) throw Error(ErrorCode::InvalidArgument, "at least 8 intervals per piece are required");
    PencilPair p;
    p.intervals = intervals;
    const std::size_t pieces = problem.piece_count();
    const std::size_t N = intervals;
    p.size = pieces * (N + 1);
    Triplets a;
    Triplets b;
    std::vector<double> h(pieces);

    for (std::size_t s = 0; s < pieces; ++s) {
        const double lo = problem.piece_lo(s);
        const double hi = problem.piece_hi(s);
        h[s] = (hi - lo) / static_cast<double>(N);
        std::vector<double> nodes(N + 1);
        for (std::size_t j = 0; j <= N; ++j) nodes[j] = j == N ? hi : lo + h[s] * static_cast<double>(j);
        const double c = -problem.rho2(s) / (h[s] * h[s]);
        for (std::size_t j = 1; j < N; ++j) {
            const std::size_t row = p.index(s, j);
            add(a, row, row - 1, c);
            add(a, row, row, -2 * c + problem.q(s)(nodes[j]));
            add(a, row, row + 1, c);
            add(b, row, row, 1.0);
        }
        p.grid.push_back(std::move(nodes));
    }

    const auto& d = problem.spec().delta;
    const std::size_t left = p.index(0, 0);
    const Stencil dl = forward_slope(p, 0, h[0]);
    add(a, left, left, d[0]);
    add(a, left, dl, -d[1]);
    add(b, left, left, d[2]);
    add(b, left, dl, -d[3]);

    const auto& g = problem.spec().gamma;
    const std::size_t last = pieces - 1;
    const std::size_t right = p.index(last, N);
    const Stencil dr = backward_slope(p, last, h[last]);
    add(a, right, right, g[0]);
    add(a, right, dr, -g[1]);
    add(b, right, right, -g[2]);
    add(b, right, dr, g[3]);

    for (std::size_t i = 0; i < problem.interface_count(); ++i) {
        const TransmissionMatrix& tm = problem.transmission(i);
        const Stencil plus_slope = forward_slope(p, i + 1, h[i + 1]);
        const Stencil minus_slope = backward_slope(p, i, h[i]);
        const std::size_t plus = p.index(i + 1, 0);
        const std::size_t minus = p.index(i, N);
        for (const auto& [row, r] : {std::pair{minus, tm.row1}, std::pair{plus, tm.row2}}) {
            add(a, row, plus_slope, r[0]);
            add(a, row, plus, r[1]);
            add(a, row, minus_slope, r[2]);
            add(a, row, minus, r[3]);
        }
    }

    const auto n = static_cast<Eigen::Index>(p.size);
    p.A.resize(n, n);
    p.B.resize(n, n);
    p.A.setFromTriplets(a.begin(), a.end());
    p.B.setFromTriplets(b.begin(), b.end());
    p.A.prune(0.0);
    p.B.prune(0.0);
    return p;
}

PencilSpectrum pencil_eigenvalues_dense(const PencilPair& pencil, std::size_t count) {
    const auto n = static_cast<lapack_int>(pencil.size);
    Eigen::MatrixXd A(pencil.A);
    Eigen::MatrixXd B(pencil.B);
    std::vector<double> ar(n), ai(n), beta(n);
    const lapack_int info = LAPACKE_dggev(LAPACK_COL_MAJOR, 'N', 'N', n, A.data(), n, B.data(), n, ar.data(),
                                          ai.data(), beta.data(), nullptr, 1, nullptr, 1);
    if (info != 0) {
        throw Error(ErrorCode::SingularSystem, "dggev failed with info = " + std::to_string(info));
    }
    std::vector<std::complex<double>> finite;
    for (lapack_int k = 0; k < n; ++k) {
        if (beta[k] == 0) continue;
        const std::complex<double> l(ar[k] / beta[k], ai[k] / beta[k]);
        if (std::isfinite(l.real()) && std::isfinite(l.imag()) && std::abs(l) <= kInfiniteCutoff) finite.push_back(l);
    }
    return select_smallest(std::move(finite), count);
}

PencilSpectrum pencil_eigenvalues_arnoldi(const PencilPair& pencil, std::size_t count, double sigma) {
    using Eigen::Index;
    using Eigen::VectorXd;
    const auto n = static_cast<Index>(pencil.size);
    Eigen::SparseMatrix<double> shifted = pencil.A - sigma * pencil.B;
    shifted.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success) {
        std::ostringstream os;
        os << "shifted pencil A - " << sigma << " B is singular";
        throw Error(ErrorCode::SingularSystem, os.str());
    }
    auto apply = [&](const VectorXd& v) -> VectorXd { return lu.solve(pencil.B * v); };

    const Index wanted = static_cast<Index>(std::min<std::size_t>(count + 4, pencil.size));
    Index m = std::min<Index>(n, std::max<Index>(2 * wanted + 20, 60));
    VectorXd start(n);
    for (Index j = 0; j < n; ++j) start[j] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(j) + 0.3);
    start = apply(start);

    while (true) {
        Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, m + 1);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
        V.col(0) = start.normalized();
        Index steps = m;
        for (Index j = 0; j < m; ++j) {
            VectorXd w = apply(V.col(j));
            for (int pass = 0; pass < 2; ++pass) {
                const VectorXd c = V.leftCols(j + 1).transpose() * w;
                w -= V.leftCols(j + 1) * c;
                H.col(j).head(j + 1) += c;
            }
            H(j + 1, j) = w.norm();
            if (H(j + 1, j) <= 1e-14 * H.col(j).head(j + 1).norm()) {
                steps = j + 1;
                H(j + 1, j) = 0;
                break;
            }
            V.col(j + 1) = w / H(j + 1, j);
        }

        Eigen::EigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(steps, steps));
        const Eigen::VectorXcd mu = es.eigenvalues();
        const Eigen::MatrixXcd y = es.eigenvectors();
        std::vector<Index> order(static_cast<std::size_t>(steps));
        for (Index k = 0; k < steps; ++k) order[static_cast<std::size_t>(k)] = k;
        std::sort(order.begin(), order.end(), [&](Index x, Index z) { return std::abs(mu[x]) > std::abs(mu[z]); });

        const double beta = H(steps, steps - 1);
        bool converged = true;
        std::vector<std::complex<double>> lambdas;
        for (Index k = 0; k < std::min(wanted, steps); ++k) {
            const Index idx = order[static_cast<std::size_t>(k)];
            const double amu = std::abs(mu[idx]);
            if (amu == 0) break;
            const std::complex<double> lambda = sigma + 1.0 / mu[idx];
            const double residual = beta * std::abs(y(steps - 1, idx)) / y.col(idx).norm();
            if (residual / (amu * amu) > 1e-11 * std::max(1.0, std::abs(lambda))) converged = false;
            if (std::abs(lambda) <= kInfiniteCutoff) lambdas.push_back(lambda);
        }
        if (converged || m >= n) return select_smallest(std::move(lambdas), count);
        m = std::min<Index>(n, 2 * m);
    }
}

PencilSpectrum pencil_eigenvalues(const ValidatedProblem& problem, std::size_t intervals, std::size_t count) {
    const PencilPair pencil = assemble_pencil(problem, intervals);
    if (pencil.size <= kDenseLimit) return pencil_eigenvalues_dense(pencil, count);
    const PencilSpectrum coarse = pencil_eigenvalues_dense(assemble_pencil(problem, kShiftEstimateIntervals), 1);
    if (coarse.eigenvalues.empty()) throw Error(ErrorCode::SingularSystem, "coarse pencil has no finite eigenvalue");
    const double low = coarse.eigenvalues.front();
    return pencil_eigenvalues_arnoldi(pencil, count, low - 1.0 - 0.5 * std::abs(low));
}

OracleSpectrum oracle_eigenvalues(const ValidatedProblem& problem, std::size_t intervals, std::size_t count) {
    const std::size_t ladder[] = {intervals, 2 * intervals};
    return oracle_eigenvalues(problem, ladder, count);
}

OracleSpectrum oracle_eigenvalues(const ValidatedProblem& problem, std::span<const std::size_t> ladder,
                                  std::size_t count) {
    if (ladder.size() < 2) throw Error(ErrorCode::InvalidArgument, "the resolution ladder needs two levels");
    for (std::size_t l = 1; l < ladder.size(); ++l) {
        if (ladder[l] != 2 * ladder[l - 1]) {
            throw Error(ErrorCode::InvalidArgument, "every ladder level must double the previous one");
        }
    }
    OracleSpectrum out;
    out.ladder.assign(ladder.begin(), ladder.end());
    std::vector<std::vector<double>> raw;
    std::size_t available = count;
    for (std::size_t N : ladder) {
        PencilSpectrum s = pencil_eigenvalues(problem, N, count);
        out.max_imag = std::max(out.max_imag, s.max_imag);
        available = std::min(available, s.eigenvalues.size());
        raw.push_back(std::move(s.eigenvalues));
    }
    if (available < count) {
        out.warnings.push_back("only " + std::to_string(available) + " finite eigenvalues available at every level");
    }

    const std::size_t L = raw.size();
    for (std::size_t k = 0; k < available; ++k) {
        OracleEigenvalue e;
        for (const auto& level : raw) e.levels.push_back(level[k]);
        auto rich = [&](std::size_t l) { return (4 * e.levels[l] - e.levels[l - 1]) / 3; };
        e.value = rich(L - 1);
        const double size = std::max(1.0, std::abs(e.value));
        const double drift = std::abs(e.levels[L - 1] - e.levels[L - 2]);
        if (L == 2) {
            e.error_estimate = drift / 3;
            e.spurious = drift > 0.1 * size;
        } else {
            e.error_estimate = std::max(std::abs(e.value - rich(L - 2)), 1e-9 * size);
            const double predicted = std::abs(e.levels[L - 2] - e.levels[L - 3]) / 4;
            e.spurious = drift > 10 * std::max(predicted, 1e-12 * size);
        }
        if (e.spurious) {
            std::ostringstream os;
            os << "eigenvalue " << k + 1 << " (" << e.value << ") is unstable across the ladder";
            out.warnings.push_back(os.str());
        }
        out.eigenvalues.push_back(std::move(e));
    }
    return out;
}

double GridFunction::sup_distance(const PiecewiseFunction& u) const {
    double worst = 0;
    for (std::size_t p = 0; p < x.size(); ++p) {
        for (std::size_t j = 0; j < x[p].size(); ++j) worst = std::max(worst, std::abs(v[p][j] - u.value(p, x[p][j])));
    }
    return worst;
}

GridFunction oracle_solve(const ValidatedProblem& problem, Complex lambda, const PiecewiseFunction& f,
                          std::size_t intervals) {
    if (f.piece_count() != problem.piece_count()) {
        throw Error(ErrorCode::ShapeMismatch, "right-hand side piece count does not match the problem");
    }
    const PencilPair p = assemble_pencil(problem, intervals);
    using SpC = Eigen::SparseMatrix<Complex>;
    SpC M = lambda * p.B.cast<Complex>() - p.A.cast<Complex>();
    M.makeCompressed();
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(p.size));
    for (std::size_t s = 0; s < problem.piece_count(); ++s) {
        for (std::size_t j = 1; j < intervals; ++j) {
            rhs[static_cast<Eigen::Index>(p.index(s, j))] = f.value(s, p.grid[s][j]);
        }
    }
    Eigen::SparseLU<SpC> lu;
    lu.compute(M);
    if (lu.info() != Eigen::Success) {
        std::ostringstream os;
        os << "lambda B - A is singular at lambda = " << lambda;
        throw Error(ErrorCode::SingularSystem, os.str());
    }
    const Eigen::VectorXcd v = lu.solve(rhs);
    if (!v.allFinite()) throw Error(ErrorCode::SingularSystem, "finite-difference solve produced non-finite values");

    GridFunction out;
    out.x = p.grid;
    for (std::size_t s = 0; s < problem.piece_count(); ++s) {
        std::vector<Complex> values(intervals + 1);
        for (std::size_t j = 0; j <= intervals; ++j) values[j] = v[static_cast<Eigen::Index>(p.index(s, j))];
        out.v.push_back(std::move(values));
    }
    return out;
}

}  // namespace bvtp
