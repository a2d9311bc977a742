#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liesym/rational.hpp"

namespace liesym {

/// Dense univariate polynomial over the rationals. Coefficient index equals
/// the degree; the zero polynomial is the empty list and reports degree -1
/// (standing in for "minus infinity").
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(int constant_value) : c_{Rational(constant_value)} { trim(); }
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static UniPoly constant(Rational v) { return UniPoly(std::vector<Rational>{std::move(v)}); }
    static UniPoly variable() { return UniPoly({Rational(0), Rational(1)}); }
    /// (x - root)
    static UniPoly linear_root(const Rational& root) { return UniPoly({-root, Rational(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    const Rational& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
        return c_[static_cast<size_t>(k)];
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    UniPoly operator-() const {
        std::vector<Rational> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return UniPoly(std::move(r));
    }

    friend UniPoly operator+(const UniPoly& p, const UniPoly& q) {
        std::vector<Rational> r(std::max(p.c_.size(), q.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = p.coeff(static_cast<int>(i)) + q.coeff(static_cast<int>(i));
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& p, const UniPoly& q) { return p + (-q); }
    friend UniPoly operator*(const UniPoly& p, const UniPoly& q) {
        if (p.is_zero() || q.is_zero()) return UniPoly();
        std::vector<Rational> r(p.c_.size() + q.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < p.c_.size(); ++i)
            for (size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const Rational& s, const UniPoly& p) {
        if (s.is_zero()) return UniPoly();
        std::vector<Rational> r(p.c_.size());
        for (size_t i = 0; i < p.c_.size(); ++i) r[i] = s * p.c_[i];
        return UniPoly(std::move(r));
    }

    friend bool operator==(const UniPoly& p, const UniPoly& q) { return p.c_ == q.c_; }
    friend bool operator!=(const UniPoly& p, const UniPoly& q) { return !(p == q); }

    /// Euclidean division: returns (quotient, remainder) with deg r < deg d.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& n, const UniPoly& d) {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        if (n.degree() < d.degree()) return {UniPoly(), n};
        std::vector<Rational> rem = n.c_;
        std::vector<Rational> quot(static_cast<size_t>(n.degree() - d.degree()) + 1, Rational(0));
        const Rational& lead = d.leading();
        for (int k = n.degree() - d.degree(); k >= 0; --k) {
            Rational f = rem[static_cast<size_t>(k + d.degree())] / lead;
            quot[static_cast<size_t>(k)] = f;
            if (f.is_zero()) continue;
            for (int j = 0; j <= d.degree(); ++j)
                rem[static_cast<size_t>(k + j)] -= f * d.c_[static_cast<size_t>(j)];
        }
        return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
    }

    /// Exact quotient; throws if the division leaves a remainder.
    friend UniPoly operator/(const UniPoly& n, const UniPoly& d) {
        auto [q, r] = divmod(n, d);
        if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
        return q;
    }

    bool divides(const UniPoly& other) const {
        if (is_zero()) return other.is_zero();
        return divmod(other, *this).second.is_zero();
    }

    UniPoly monic() const {
        if (is_zero()) throw std::domain_error("monic form of zero polynomial");
        return leading().inverse() * *this;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rational> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rational(static_cast<long>(i)) * c_[i];
        return UniPoly(std::move(r));
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }
    std::complex<double> eval(const std::complex<double>& x) const {
        std::complex<double> acc(0.0, 0.0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].to_double();
        return acc;
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += c_[i].sign() > 0 ? " + " : " - ";
            else if (c_[i].sign() < 0) s += "-";
            Rational a = c_[i].abs();
            if (i == 0 || !a.is_one()) s += a.str();
            if (i > 0) {
                if (!a.is_one()) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline bool is_zero(const UniPoly& p) { return p.is_zero(); }

/// Monic greatest common divisor; both arguments zero is an error.
inline UniPoly poly_gcd(UniPoly p, UniPoly q) {
    if (p.is_zero() && q.is_zero()) throw std::domain_error("gcd undefined for two zero polynomials");
    while (!q.is_zero()) {
        UniPoly r = UniPoly::divmod(p, q).second;
        p = std::move(q);
        q = std::move(r);
    }
    return p.monic();
}

struct RootFactorization {
    std::vector<std::pair<Rational, int>> roots;  // (root, multiplicity)
    UniPoly residual;                             // rational-root-free cofactor
};

namespace detail {

/// All positive divisors of |m|, found by trial division. A cofactor that
/// resists factoring below the bound is treated as prime; divisors built from
/// it are still genuine divisors, only completeness may suffer for adversarial
/// inputs.
inline std::vector<mpz_class> positive_divisors(mpz_class m) {
    m = ::abs(m);
    std::vector<std::pair<mpz_class, int>> factors;
    static constexpr unsigned long kTrialBound = 1000000;
    mpz_class p(2);
    while (p * p <= m && p <= kTrialBound) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            factors.emplace_back(p, e);
        }
        p += (p == 2) ? 1 : 2;
    }
    if (m > 1) factors.emplace_back(m, 1);
    std::vector<mpz_class> divs{mpz_class(1)};
    for (const auto& [q, e] : factors) {
        size_t old = divs.size();
        mpz_class pw(1);
        for (int k = 1; k <= e; ++k) {
            pw *= q;
            for (size_t i = 0; i < old; ++i) divs.push_back(divs[i] * pw);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace detail

/// All rational roots of p with exact multiplicities, plus the cofactor with
/// no rational roots. The product of (x - r)^mult over the roots times the
/// residual equals p up to the leading constant.
inline RootFactorization factor_rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
    RootFactorization out;
    UniPoly work = p;

    // Root zero first.
    int zero_mult = 0;
    while (!work.is_zero() && work.coeff(0).is_zero() && work.degree() > 0) {
        work = work / UniPoly::variable();
        ++zero_mult;
    }
    if (zero_mult > 0) out.roots.emplace_back(Rational(0), zero_mult);

    if (work.degree() > 0) {
        // Clear denominators: candidates are ±u/w with u | trailing, w | leading.
        mpz_class den_lcm(1);
        for (const Rational& c : work.coeffs()) {
            mpz_class d = c.denominator();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
            den_lcm = den_lcm / g * d;
        }
        std::vector<mpz_class> zc(work.coeffs().size());
        for (size_t i = 0; i < zc.size(); ++i) {
            Rational scaled = work.coeff(static_cast<int>(i)) * Rational(den_lcm);
            zc[i] = scaled.numerator();
        }
        auto num_divs = detail::positive_divisors(zc.front());
        auto den_divs = detail::positive_divisors(zc.back());
        for (const mpz_class& u : num_divs) {
            for (const mpz_class& w : den_divs) {
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t());
                if (g != 1) continue;
                for (int s : {1, -1}) {
                    Rational cand = Rational(mpz_class(s * u)) / Rational(w);
                    if (!work.eval(cand).is_zero()) continue;
                    int mult = 0;
                    UniPoly factor = UniPoly::linear_root(cand);
                    while (factor.divides(work)) {
                        work = work / factor;
                        ++mult;
                    }
                    out.roots.emplace_back(cand, mult);
                }
                if (work.degree() == 0) break;
            }
            if (work.degree() == 0) break;
        }
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.residual = work;
    return out;
}

}  // namespace liesym
