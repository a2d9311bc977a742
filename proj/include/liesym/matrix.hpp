#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liesym/quadext.hpp"
#include "liesym/rational.hpp"

namespace liesym {

namespace detail {
// Free dispatch so member names never shadow the scalar-level zero tests.
template <class S>
bool entry_zero(const S& x) {
    return is_zero(x);
}
}  // namespace detail

/// Dense row-major matrix over an exact or numeric scalar.
template <class S>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, S(0)) {}
    Matrix(size_t rows, size_t cols, std::vector<S> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows * cols) throw std::invalid_argument("matrix entry count mismatch");
    }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    S& operator()(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const S& operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    const std::vector<S>& entries() const { return e_; }

    bool is_zero() const {
        for (const S& x : e_)
            if (!detail::entry_zero(x)) return false;
        return true;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (S& x : r.e_) x = -x;
        return r;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r = a;
        for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r = a;
        for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a(i, k);
                if (detail::entry_zero(aik)) continue;
                for (size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend Matrix operator*(const S& s, const Matrix& a) {
        Matrix r = a;
        for (auto& x : r.e_) x = s * x;
        return r;
    }

    std::vector<S> apply(const std::vector<S>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<S> r(rows_, S(0));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix pow(size_t e) const {
        if (!is_square()) throw std::invalid_argument("power of non-square matrix");
        Matrix r = identity(rows_);
        Matrix base = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = r * base;
            if (e > 1) base = base * base;
        }
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    template <class T, class F>
    Matrix<T> map(F&& f) const {
        Matrix<T> r(rows_, cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    size_t rows_, cols_;
    std::vector<S> e_;
};

using RatMatrix = Matrix<Rational>;

namespace detail {

/// Fraction-free (Bareiss) forward elimination of an integer matrix. Returns
/// the echelon matrix and the pivot columns; entries stay bounded because every
/// intermediate value is a minor of the input.
struct BareissEchelon {
    std::vector<std::vector<mpz_class>> m;
    std::vector<size_t> pivot_cols;
};

inline BareissEchelon bareiss_echelon(std::vector<std::vector<mpz_class>> m) {
    BareissEchelon out;
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    mpz_class prev(1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j) {
                mpz_class num = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.m = std::move(m);
    return out;
}

inline std::vector<std::vector<mpz_class>> clear_row_denominators(const RatMatrix& a) {
    std::vector<std::vector<mpz_class>> m(a.rows(), std::vector<mpz_class>(a.cols()));
    for (size_t i = 0; i < a.rows(); ++i) {
        mpz_class lcm(1);
        for (size_t j = 0; j < a.cols(); ++j) {
            mpz_class d = a(i, j).denominator(), g;
            mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
            lcm = lcm / g * d;
        }
        for (size_t j = 0; j < a.cols(); ++j) {
            Rational scaled = a(i, j) * Rational(lcm);
            m[i][j] = scaled.numerator();
        }
    }
    return m;
}

}  // namespace detail

/// Exact rank via fraction-free elimination.
inline size_t rank(const RatMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return detail::bareiss_echelon(detail::clear_row_denominators(a)).pivot_cols.size();
}

/// Basis of the right nullspace. Vectors are scaled so the first nonzero entry
/// is 1 and ordered by their free-column position; size is cols - rank.
inline std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& a) {
    const size_t n = a.cols();
    if (n == 0) return {};
    auto ech = detail::bareiss_echelon(detail::clear_row_denominators(a));
    const auto& pivots = ech.pivot_cols;

    std::vector<bool> is_pivot(n, false);
    for (size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[f] = Rational(1);
        for (size_t k = pivots.size(); k-- > 0;) {
            size_t pc = pivots[k];
            if (pc > f) continue;  // columns beyond f carry zeros in this vector
            Rational acc(0);
            for (size_t j = pc + 1; j <= f; ++j) {
                if (ech.m[k][j] == 0 || v[j].is_zero()) continue;
                acc += Rational(ech.m[k][j]) * v[j];
            }
            v[pc] = -acc / Rational(ech.m[k][pc]);
        }
        for (const Rational& x : v) {
            if (!x.is_zero()) {
                Rational inv = x.inverse();
                for (Rational& y : v) y *= inv;
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Gauss-Jordan reduction over an exact field scalar (Rational or QuadExt).
/// Returns pivot columns; the matrix is left in reduced row echelon form.
template <class S>
std::vector<size_t> rref_in_place(Matrix<S>& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
        S inv = S(1) / m(r, c);
        for (size_t j = c; j < m.cols(); ++j) m(r, j) = inv * m(r, j);
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            S f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// One solution of A x = b over an exact field, free variables set to zero;
/// empty if the system is inconsistent.
template <class S>
std::optional<std::vector<S>> solve_linear(const Matrix<S>& a, const std::vector<S>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("rhs size mismatch");
    Matrix<S> aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<S> x(a.cols(), S(0));
    for (size_t k = 0; k < pivots.size(); ++k) {
        // Pivot row k has a unit pivot; read the solution off the last column.
        size_t row = k;
        x[pivots[k]] = aug(row, a.cols());
    }
    return x;
}

/// Exact inverse; empty if singular.
template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& a) {
    if (!a.is_square()) throw std::invalid_argument("inverse of non-square matrix");
    const size_t n = a.rows();
    Matrix<S> aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = S(1);
    }
    auto pivots = rref_in_place(aug);
    if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
    Matrix<S> inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

/// Exact rank over any field scalar (used for quadratic-extension blocks).
template <class S>
size_t rank_field(Matrix<S> m) {
    return rref_in_place(m).size();
}

}  // namespace liesym
