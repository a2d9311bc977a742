#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "liesym/exp_poly.hpp"
#include "liesym/rational.hpp"

namespace liesym {

/// Sparse multivariate polynomial over the rationals with a fixed variable
/// count; exponent vectors are the map keys. Heavy machinery is unnecessary:
/// projective symmetry coefficients are quadratic and their residuals stay at
/// degree four or so.
class MultiPoly {
public:
    using Monomial = std::vector<int>;

    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(size_t nvars, Rational c) {
        MultiPoly p(nvars);
        if (!c.is_zero()) p.terms_[Monomial(nvars, 0)] = std::move(c);
        return p;
    }
    static MultiPoly variable(size_t nvars, size_t index) {
        MultiPoly p(nvars);
        Monomial m(nvars, 0);
        m.at(index) = 1;
        p.terms_[std::move(m)] = Rational(1);
        return p;
    }
    static MultiPoly monomial(size_t nvars, Monomial m, Rational c) {
        if (m.size() != nvars) throw std::invalid_argument("monomial arity mismatch");
        MultiPoly p(nvars);
        if (!c.is_zero()) p.terms_[std::move(m)] = std::move(c);
        return p;
    }

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) {
            int s = 0;
            for (int e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        check_vars(a, b);
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) {
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) {
                r.terms_[m] = c;
            } else {
                it->second += c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        check_vars(a, b);
        MultiPoly r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(a.nvars_);
                for (size_t i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
                auto it = r.terms_.find(m);
                if (it == r.terms_.end()) {
                    Rational c = ca * cb;
                    if (!c.is_zero()) r.terms_[std::move(m)] = std::move(c);
                } else {
                    it->second += ca * cb;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        return r;
    }
    friend MultiPoly operator*(const Rational& s, const MultiPoly& p) {
        MultiPoly r(p.nvars_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : p.terms_) r.terms_[m] = s * c;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly derivative(size_t var) const {
        MultiPoly r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d = m;
            d[var] -= 1;
            r.terms_[std::move(d)] = Rational(m[var]) * c;
        }
        return r;
    }

    template <class T>
    T eval(const std::vector<T>& point) const {
        if (point.size() != nvars_) throw std::invalid_argument("wrong evaluation point arity");
        T acc(0);
        for (const auto& [m, c] : terms_) {
            T v(0);
            if constexpr (std::is_same_v<T, Complex>) {
                v = Complex(c.to_double(), 0.0);
            } else {
                v = T(c);
            }
            for (size_t i = 0; i < nvars_; ++i)
                for (int e = 0; e < m[i]; ++e) v *= point[i];
            acc += v;
        }
        return acc;
    }

    /// Substitutes every variable except var 0 (time) and returns a polynomial
    /// in t as an exp-poly over the given scalar.
    template <class S>
    ExpPoly<S> eval_partial_time(const std::vector<S>& values) const {
        if (values.size() + 1 != nvars_) throw std::invalid_argument("wrong substitution arity");
        ExpPoly<S> acc;
        for (const auto& [m, c] : terms_) {
            S v(0);
            if constexpr (std::is_same_v<S, Complex>) {
                v = Complex(c.to_double(), 0.0);
            } else {
                v = S(c);
            }
            for (size_t i = 1; i < nvars_; ++i)
                for (int e = 0; e < m[i]; ++e) v *= values[i - 1];
            if (!liesym::is_zero(v)) acc += ExpPoly<S>::term(v, m[0], S(0));
        }
        return acc;
    }

private:
    static void check_vars(const MultiPoly& a, const MultiPoly& b) {
        if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable count mismatch");
    }

    size_t nvars_;
    std::map<Monomial, Rational> terms_;
};

}  // namespace liesym
