#include "bvtp/piecewise_function.hpp"

#include "bvtp/error.hpp"

namespace bvtp {

PiecewiseFunction::PiecewiseFunction(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {}

PiecewiseFunction PiecewiseFunction::zero(std::size_t pieces) { return constant(pieces, 0); }

PiecewiseFunction PiecewiseFunction::constant(std::size_t pieces, Complex value) {
    return PiecewiseFunction(std::vector<Piece>(pieces, [value](double) { return ValuePair{value, 0}; }));
}

PiecewiseFunction PiecewiseFunction::polynomial(std::size_t pieces, const Polynomial& p) {
    return polynomials(std::vector<Polynomial>(pieces, p));
}

PiecewiseFunction PiecewiseFunction::polynomials(const std::vector<Polynomial>& per_piece) {
    std::vector<Piece> pieces;
    pieces.reserve(per_piece.size());
    for (const Polynomial& p : per_piece) {
        Polynomial dp;
        for (std::size_t k = 1; k < p.coefficients.size(); ++k) {
            dp.coefficients.push_back(static_cast<double>(k) * p.coefficients[k]);
        }
        pieces.emplace_back([p, dp](double x) { return ValuePair{p(x), dp(x)}; });
    }
    return PiecewiseFunction(std::move(pieces));
}

PiecewiseFunction PiecewiseFunction::from_solution(std::shared_ptr<const PiecewiseSolution> solution) {
    std::vector<Piece> pieces;
    for (std::size_t s = 0; s < solution->piece_count(); ++s) {
        pieces.emplace_back([solution, s](double x) { return (*solution)(s, x); });
    }
    return PiecewiseFunction(std::move(pieces));
}

PiecewiseFunction PiecewiseFunction::from_solution(PiecewiseSolution solution) {
    return from_solution(std::make_shared<const PiecewiseSolution>(std::move(solution)));
}

PiecewiseFunction PiecewiseFunction::operator+(const PiecewiseFunction& other) const {
    if (other.piece_count() != piece_count()) {
        throw Error(ErrorCode::ShapeMismatch, "piecewise functions with different piece counts");
    }
    std::vector<Piece> pieces;
    for (std::size_t s = 0; s < piece_count(); ++s) {
        pieces.emplace_back([a = pieces_[s], b = other.pieces_[s]](double x) {
            const ValuePair va = a(x);
            const ValuePair vb = b(x);
            return ValuePair{va.u + vb.u, va.du + vb.du};
        });
    }
    return PiecewiseFunction(std::move(pieces));
}

PiecewiseFunction PiecewiseFunction::operator-(const PiecewiseFunction& other) const {
    return *this + other.scaled(-1.0);
}

PiecewiseFunction PiecewiseFunction::scaled(Complex factor) const {
    std::vector<Piece> pieces;
    for (const Piece& p : pieces_) {
        pieces.emplace_back([p, factor](double x) {
            const ValuePair v = p(x);
            return ValuePair{factor * v.u, factor * v.du};
        });
    }
    return PiecewiseFunction(std::move(pieces));
}

}  // namespace bvtp
