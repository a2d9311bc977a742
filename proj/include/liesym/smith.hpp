#pragma once

#include <stdexcept>
#include <vector>

#include "liesym/matrix.hpp"
#include "liesym/polynomial.hpp"

namespace liesym {

using PolyMatrix = Matrix<UniPoly>;

/// Nonconstant invariant polynomials of a square rational matrix, listed with
/// degrees descending so each entry divides the one before it. The degrees
/// form a partition of n and the product of all factors is the characteristic
/// polynomial.
struct InvariantFactorData {
    std::vector<UniPoly> factors;
    std::vector<int> degrees;

    size_t count() const { return factors.size(); }
};

/// x*E - D, the characteristic matrix.
inline PolyMatrix characteristic_matrix(const RatMatrix& d) {
    if (!d.is_square()) throw std::invalid_argument("characteristic matrix of non-square input");
    const size_t n = d.rows();
    PolyMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            std::vector<Rational> c{-d(i, j)};
            if (i == j) c.push_back(Rational(1));
            m(i, j) = UniPoly(std::move(c));
        }
    return m;
}

namespace detail {

/// Diagonalizes a polynomial matrix by elementary row/column operations with
/// the minimal-degree pivot rule: pick the lowest-degree nonzero entry of the
/// trailing submatrix, clear its row and column by polynomial division, and
/// once clean check that the pivot divides the whole submatrix (adding an
/// offending row back in if not). The resulting diagonal satisfies the
/// divisibility chain by construction.
inline void smith_diagonalize(PolyMatrix& m) {
    const size_t rows = m.rows(), cols = m.cols();
    const size_t steps = std::min(rows, cols);
    for (size_t t = 0; t < steps; ++t) {
        for (;;) {
            // Minimal-degree nonzero pivot, ties by (row, col).
            size_t pi = rows, pj = cols;
            int best = -1;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j) {
                    if (m(i, j).is_zero()) continue;
                    if (best < 0 || m(i, j).degree() < best) {
                        best = m(i, j).degree();
                        pi = i;
                        pj = j;
                    }
                }
            if (best < 0) return;  // trailing submatrix all zero
            if (pi != t)
                for (size_t j = 0; j < cols; ++j) std::swap(m(t, j), m(pi, j));
            if (pj != t)
                for (size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, pj));

            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m(i, t).is_zero()) continue;
                auto [q, r] = UniPoly::divmod(m(i, t), m(t, t));
                for (size_t j = t; j < cols; ++j) m(i, j) = m(i, j) - q * m(t, j);
                if (!r.is_zero()) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (m(t, j).is_zero()) continue;
                auto [q, r] = UniPoly::divmod(m(t, j), m(t, t));
                for (size_t i = t; i < rows; ++i) m(i, j) = m(i, j) - q * m(i, t);
                if (!r.is_zero()) clean = false;
            }
            if (!clean) continue;  // leftover remainders have smaller degree

            size_t offender = 0;
            bool divides_all = true;
            for (size_t i = t + 1; i < rows && divides_all; ++i)
                for (size_t j = t + 1; j < cols && divides_all; ++j)
                    if (!m(t, t).divides(m(i, j))) {
                        divides_all = false;
                        offender = i;
                    }
            if (divides_all) break;
            // Fold the offending row into the pivot row and reduce again.
            for (size_t j = t + 1; j < cols; ++j) m(t, j) = m(t, j) + m(offender, j);
        }
        m(t, t) = m(t, t).monic();
    }
}

}  // namespace detail

/// Smith normal form of x*E - D over the rational polynomial ring, reported as
/// the nonconstant invariant polynomials in the degree order n1 >= ... >= nq.
inline InvariantFactorData smith_invariant_factors(const RatMatrix& d) {
    PolyMatrix m = characteristic_matrix(d);
    detail::smith_diagonalize(m);
    InvariantFactorData out;
    for (size_t i = m.rows(); i-- > 0;) {
        const UniPoly& p = m(i, i);
        if (p.degree() <= 0) break;  // constants (and any zero tail) terminate the chain
        out.factors.push_back(p);
        out.degrees.push_back(p.degree());
    }
    return out;
}

/// det(x*E - D), computed as the product of the invariant factors.
inline UniPoly characteristic_polynomial(const RatMatrix& d) {
    UniPoly p = UniPoly::constant(Rational(1));
    for (const UniPoly& f : smith_invariant_factors(d).factors) p = p * f;
    return p;
}

}  // namespace liesym
