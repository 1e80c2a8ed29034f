#pragma once

#include "bvtp/fundamental.hpp"
#include "bvtp/ivp.hpp"
#include "bvtp/problem.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace bvtp {

/// Function given separately on every piece, with value and slope available.
/// Pieces are evaluated on their closed interval, so interface points see the
/// one-sided limit of the requested piece. Copies share the underlying callables.
class PiecewiseFunction {
public:
    using Piece = std::function<ValuePair(double)>;

    PiecewiseFunction() = default;
    explicit PiecewiseFunction(std::vector<Piece> pieces);

    static PiecewiseFunction zero(std::size_t pieces);
    static PiecewiseFunction constant(std::size_t pieces, Complex value);
    /// Same polynomial on every piece.
    static PiecewiseFunction polynomial(std::size_t pieces, const Polynomial& p);
    /// One polynomial per piece.
    static PiecewiseFunction polynomials(const std::vector<Polynomial>& per_piece);
    static PiecewiseFunction from_solution(std::shared_ptr<const PiecewiseSolution> solution);
    static PiecewiseFunction from_solution(PiecewiseSolution solution);

    std::size_t piece_count() const { return pieces_.size(); }
    ValuePair operator()(std::size_t piece, double x) const { return pieces_[piece](x); }
    Complex value(std::size_t piece, double x) const { return pieces_[piece](x).u; }

    PiecewiseFunction operator+(const PiecewiseFunction& other) const;
    PiecewiseFunction operator-(const PiecewiseFunction& other) const;
    PiecewiseFunction scaled(Complex factor) const;

private:
    std::vector<Piece> pieces_;
};

/// Element (f, f1, f2) of the function space extended by two boundary scalars.
struct AugmentedFunction {
    PiecewiseFunction f;
    Complex f1{};
    Complex f2{};

    /// (f, 0, 0)
    static AugmentedFunction plain(PiecewiseFunction f) { return {std::move(f), 0, 0}; }

    AugmentedFunction operator+(const AugmentedFunction& o) const { return {f + o.f, f1 + o.f1, f2 + o.f2}; }
    AugmentedFunction operator-(const AugmentedFunction& o) const { return {f - o.f, f1 - o.f1, f2 - o.f2}; }
    AugmentedFunction scaled(Complex c) const { return {f.scaled(c), c * f1, c * f2}; }
};

}  // namespace bvtp
