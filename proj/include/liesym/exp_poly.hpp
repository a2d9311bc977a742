#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "liesym/numeric.hpp"
#include "liesym/quadext.hpp"
#include "liesym/rational.hpp"

namespace liesym {

inline bool scalar_less(const Rational& a, const Rational& b) { return a < b; }
inline bool scalar_less(const QuadExt& a, const QuadExt& b) { return a < b; }
inline bool scalar_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

inline bool scalar_negative(const Rational& a) { return a.sign() < 0; }
inline bool scalar_negative(const QuadExt& a) { return a.sign() < 0; }
inline bool scalar_negative(const Complex& a) { return a.real() < 0; }

enum class Trig { None, Cos, Sin };

/// One closed-form term: coeff * t^power * e^{rate*t}, optionally times
/// cos(osc*t) or sin(osc*t). Pure exponential terms keep osc = 0 and may carry
/// a complex-valued rate; trig terms appear in real-field solutions only.
template <class S>
struct ExpTerm {
    S coeff{};
    int power = 0;
    S rate{};
    S osc{};
    Trig trig = Trig::None;
};

/// Finite sum of exp-polynomial terms in canonical form: unique
/// (power, rate, osc, trig) keys, zero coefficients dropped, oscillation rates
/// nonnegative.
template <class S>
class ExpPoly {
public:
    ExpPoly() = default;
    explicit ExpPoly(std::vector<ExpTerm<S>> terms) : terms_(std::move(terms)) { canonicalize(); }

    static ExpPoly zero() { return ExpPoly(); }
    static ExpPoly constant(S c) { return term(std::move(c), 0, S(0)); }
    /// c * t^p * e^{rate t}
    static ExpPoly term(S c, int p, S rate) {
        ExpTerm<S> t;
        t.coeff = std::move(c);
        t.power = p;
        t.rate = std::move(rate);
        return ExpPoly(std::vector<ExpTerm<S>>{std::move(t)});
    }
    /// c * t^p * e^{rate t} * trig(osc t)
    static ExpPoly trig_term(S c, int p, S rate, S osc, Trig trig) {
        ExpTerm<S> t;
        t.coeff = std::move(c);
        t.power = p;
        t.rate = std::move(rate);
        t.osc = std::move(osc);
        t.trig = trig;
        return ExpPoly(std::vector<ExpTerm<S>>{std::move(t)});
    }

    const std::vector<ExpTerm<S>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// True when the value is a plain polynomial in t.
    bool is_polynomial() const {
        for (const auto& t : terms_)
            if (t.trig != Trig::None || !liesym::is_zero(t.rate)) return false;
        return true;
    }

    ExpPoly operator-() const {
        ExpPoly r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }
    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
        std::vector<ExpTerm<S>> merged = a.terms_;
        merged.insert(merged.end(), b.terms_.begin(), b.terms_.end());
        return ExpPoly(std::move(merged));
    }
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + (-b); }
    ExpPoly& operator+=(const ExpPoly& o) { return *this = *this + o; }
    ExpPoly& operator-=(const ExpPoly& o) { return *this = *this - o; }

    friend ExpPoly operator*(const S& s, const ExpPoly& p) {
        ExpPoly r = p;
        for (auto& t : r.terms_) t.coeff = s * t.coeff;
        r.canonicalize();
        return r;
    }

    /// Product; at least one factor must be a plain polynomial (that is all the
    /// arithmetic the vector-field calculus ever needs).
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
        const ExpPoly* poly = a.is_polynomial() ? &a : (b.is_polynomial() ? &b : nullptr);
        if (!poly) throw std::domain_error("product of two non-polynomial exp-polynomials");
        const ExpPoly& other = (poly == &a) ? b : a;
        std::vector<ExpTerm<S>> out;
        for (const auto& p : poly->terms_)
            for (const auto& q : other.terms_) {
                ExpTerm<S> t = q;
                t.coeff = p.coeff * q.coeff;
                t.power = p.power + q.power;
                out.push_back(std::move(t));
            }
        return ExpPoly(std::move(out));
    }

    friend bool operator==(const ExpPoly& a, const ExpPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i) {
            const auto& x = a.terms_[i];
            const auto& y = b.terms_[i];
            if (x.power != y.power || x.trig != y.trig || !(x.coeff == y.coeff) ||
                !(x.rate == y.rate) || !(x.osc == y.osc))
                return false;
        }
        return true;
    }
    friend bool operator!=(const ExpPoly& a, const ExpPoly& b) { return !(a == b); }

    /// Exact term-wise derivative.
    ExpPoly derivative() const {
        std::vector<ExpTerm<S>> out;
        for (const auto& t : terms_) {
            if (t.power > 0) {
                ExpTerm<S> u = t;
                u.coeff = S(t.power) * t.coeff;
                u.power = t.power - 1;
                out.push_back(std::move(u));
            }
            if (!liesym::is_zero(t.rate)) {
                ExpTerm<S> u = t;
                u.coeff = t.rate * t.coeff;
                out.push_back(std::move(u));
            }
            if (t.trig != Trig::None) {
                ExpTerm<S> u = t;
                u.coeff = (t.trig == Trig::Cos ? -(t.osc * t.coeff) : t.osc * t.coeff);
                u.trig = (t.trig == Trig::Cos ? Trig::Sin : Trig::Cos);
                out.push_back(std::move(u));
            }
        }
        return ExpPoly(std::move(out));
    }

    Complex eval(const Complex& t) const {
        Complex acc(0.0, 0.0);
        for (const auto& term : terms_) {
            Complex v = to_complex(term.coeff);
            for (int k = 0; k < term.power; ++k) v *= t;
            v *= std::exp(to_complex(term.rate) * t);
            if (term.trig == Trig::Cos) v *= std::cos(to_complex(term.osc) * t);
            if (term.trig == Trig::Sin) v *= std::sin(to_complex(term.osc) * t);
            acc += v;
        }
        return acc;
    }

    /// Value at t = 0: sum of power-0 coefficients (sin terms vanish).
    S value_at_zero() const {
        S acc(0);
        for (const auto& t : terms_)
            if (t.power == 0 && t.trig != Trig::Sin) acc += t.coeff;
        return acc;
    }

    double max_coeff_abs() const {
        double m = 0.0;
        for (const auto& t : terms_) m = std::max(m, std::abs(to_complex(t.coeff)));
        return m;
    }

private:
    void canonicalize() {
        for (auto& t : terms_) {
            if (t.trig == Trig::None) {
                t.osc = S(0);
            } else if (liesym::is_zero(t.osc)) {
                // cos(0) = 1; sin(0) = 0
                if (t.trig == Trig::Sin) t.coeff = S(0);
                t.trig = Trig::None;
            } else if (scalar_negative(t.osc)) {
                t.osc = -t.osc;
                if (t.trig == Trig::Sin) t.coeff = -t.coeff;
            }
        }
        std::sort(terms_.begin(), terms_.end(), [](const ExpTerm<S>& x, const ExpTerm<S>& y) {
            if (x.power != y.power) return x.power < y.power;
            if (!(x.rate == y.rate)) return scalar_less(x.rate, y.rate);
            if (!(x.osc == y.osc)) return scalar_less(x.osc, y.osc);
            return static_cast<int>(x.trig) < static_cast<int>(y.trig);
        });
        std::vector<ExpTerm<S>> out;
        for (auto& t : terms_) {
            if (!out.empty() && out.back().power == t.power && out.back().rate == t.rate &&
                out.back().osc == t.osc && out.back().trig == t.trig) {
                out.back().coeff += t.coeff;
            } else {
                out.push_back(std::move(t));
            }
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const ExpTerm<S>& t) { return liesym::is_zero(t.coeff); }),
                  out.end());
        terms_ = std::move(out);
    }

    std::vector<ExpTerm<S>> terms_;
};

template <class S>
bool is_zero(const ExpPoly<S>& p) {
    return p.is_zero();
}

template <class S>
ExpPoly<S> differentiate(const ExpPoly<S>& f) {
    return f.derivative();
}

namespace detail {

template <class S>
bool scalar_eq_for_mode(const S& a, const S& b) {
    return a == b;
}
inline bool scalar_eq_for_mode(const Complex& a, const Complex& b) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= 1e-12 * scale;
}

}  // namespace detail

/// Particular solution g of g'' - lambda*g = f for a forcing whose frequencies
/// stay inside the closure of one Jordan block: pure rates with rate^2 = lambda
/// or rate = 0, and oscillating terms only in the resonant real case
/// rate = 0, osc^2 = -lambda. Resonance raises the polynomial ansatz degree;
/// every result is verified by substitution before being returned.
template <class S>
ExpPoly<S> solve_resonant(const S& lambda, const ExpPoly<S>& f) {
    // Bucket forcing terms by (rate, osc); cos/sin components solved jointly.
    struct Bucket {
        S rate, osc;
        std::vector<S> cos_coeffs, sin_coeffs;  // index = power; pure terms use cos side
        bool has_trig = false;
    };
    std::vector<Bucket> buckets;
    for (const auto& t : f.terms()) {
        Bucket* b = nullptr;
        for (auto& cand : buckets)
            if (cand.rate == t.rate && cand.osc == t.osc) {
                b = &cand;
                break;
            }
        if (!b) {
            buckets.push_back(Bucket{t.rate, t.osc, {}, {}, false});
            b = &buckets.back();
        }
        auto& side = (t.trig == Trig::Sin) ? b->sin_coeffs : b->cos_coeffs;
        if (static_cast<int>(side.size()) <= t.power) side.resize(static_cast<size_t>(t.power) + 1, S(0));
        side[static_cast<size_t>(t.power)] += t.coeff;
        if (t.trig != Trig::None) b->has_trig = true;
    }

    ExpPoly<S> g;
    for (auto& b : buckets) {
        const int deg = static_cast<int>(std::max(b.cos_coeffs.size(), b.sin_coeffs.size())) - 1;
        auto fp = [&](int j) { return j < static_cast<int>(b.cos_coeffs.size()) ? b.cos_coeffs[static_cast<size_t>(j)] : S(0); };
        auto fq = [&](int j) { return j < static_cast<int>(b.sin_coeffs.size()) ? b.sin_coeffs[static_cast<size_t>(j)] : S(0); };

        if (!b.has_trig) {
            const bool resonant = detail::scalar_eq_for_mode(b.rate * b.rate, lambda);
            if (!resonant && !liesym::is_zero(b.rate))
                throw std::domain_error("frequency outside block closure");
            if (resonant && !liesym::is_zero(b.rate)) {
                // q'' + 2 mu q' = f, ansatz degree deg+1, constant term free -> 0.
                std::vector<S> q(static_cast<size_t>(deg) + 3, S(0));
                for (int j = deg; j >= 0; --j) {
                    S high = S((j + 2) * (j + 1)) * q[static_cast<size_t>(j + 2)];
                    q[static_cast<size_t>(j + 1)] = (fp(j) - high) / (S(2 * (j + 1)) * b.rate);
                }
                for (int j = 1; j <= deg + 1; ++j)
                    if (!liesym::is_zero(q[static_cast<size_t>(j)]))
                        g += ExpPoly<S>::term(q[static_cast<size_t>(j)], j, b.rate);
            } else if (resonant) {
                // lambda = 0 with polynomial forcing: integrate twice.
                for (int j = 0; j <= deg; ++j)
                    if (!liesym::is_zero(fp(j)))
                        g += ExpPoly<S>::term(fp(j) / S((j + 1) * (j + 2)), j + 2, S(0));
            } else {
                // rate = 0, lambda != 0: q'' - lambda q = f, descending in degree.
                std::vector<S> q(static_cast<size_t>(deg) + 3, S(0));
                for (int j = deg; j >= 0; --j) {
                    S high = S((j + 2) * (j + 1)) * q[static_cast<size_t>(j + 2)];
                    q[static_cast<size_t>(j)] = -(fp(j) - high) / lambda;
                }
                for (int j = 0; j <= deg; ++j)
                    if (!liesym::is_zero(q[static_cast<size_t>(j)]))
                        g += ExpPoly<S>::term(q[static_cast<size_t>(j)], j, S(0));
            }
        } else {
            // Oscillating forcing: allowed only at the block's own frequencies,
            // i.e. rate = 0 with osc^2 = -lambda (resonant by construction).
            if (!liesym::is_zero(b.rate) || !detail::scalar_eq_for_mode(-(b.osc * b.osc), lambda))
                throw std::domain_error("frequency outside block closure");
            const S omega = b.osc;
            std::vector<S> p(static_cast<size_t>(deg) + 3, S(0)), q(static_cast<size_t>(deg) + 3, S(0));
            for (int j = deg; j >= 0; --j) {
                S ph = S((j + 2) * (j + 1)) * p[static_cast<size_t>(j + 2)];
                S qh = S((j + 2) * (j + 1)) * q[static_cast<size_t>(j + 2)];
                S denom = S(2 * (j + 1)) * omega;
                q[static_cast<size_t>(j + 1)] = (fp(j) - ph) / denom;
                p[static_cast<size_t>(j + 1)] = (qh - fq(j)) / denom;
            }
            for (int j = 1; j <= deg + 1; ++j) {
                if (!liesym::is_zero(p[static_cast<size_t>(j)]))
                    g += ExpPoly<S>::trig_term(p[static_cast<size_t>(j)], j, S(0), omega, Trig::Cos);
                if (!liesym::is_zero(q[static_cast<size_t>(j)]))
                    g += ExpPoly<S>::trig_term(q[static_cast<size_t>(j)], j, S(0), omega, Trig::Sin);
            }
        }
    }

    // Substitution check: g'' - lambda g - f must vanish.
    ExpPoly<S> residual = g.derivative().derivative() - lambda * g - f;
    if constexpr (std::is_same_v<S, Complex>) {
        double scale = std::max({1.0, f.max_coeff_abs(), g.max_coeff_abs()});
        if (residual.max_coeff_abs() > 1e-9 * scale)
            throw std::logic_error("resonant solve failed substitution check");
    } else {
        if (!residual.is_zero()) throw std::logic_error("resonant solve failed substitution check");
    }
    return g;
}

/// Real part of a complex-valued exp-polynomial (imaginary radicand rates and
/// coefficients split into trig terms over the matching real extension).
inline QuadExt real_component(const QuadExt& x) {
    if (x.radicand() < 0) return QuadExt(x.rational_part());
    return x;
}
inline QuadExt imag_component(const QuadExt& x) {
    if (x.radicand() < 0) return QuadExt(Rational(0), x.radical_part(), -x.radicand());
    return QuadExt(0);
}
inline Complex real_component(const Complex& x) { return {x.real(), 0.0}; }
inline Complex imag_component(const Complex& x) { return {x.imag(), 0.0}; }

/// Splits a complex-mode exp-poly (pure terms only) into (Re, Im) as
/// real-field exp-polys with trig factors.
template <class S>
std::pair<ExpPoly<S>, ExpPoly<S>> split_real_imag(const ExpPoly<S>& f) {
    ExpPoly<S> re, im;
    for (const auto& t : f.terms()) {
        if (t.trig != Trig::None) throw std::domain_error("term already split");
        S u = real_component(t.rate), w = imag_component(t.rate);
        S cr = real_component(t.coeff), ci = imag_component(t.coeff);
        if (liesym::is_zero(w)) {
            if (!liesym::is_zero(cr)) re += ExpPoly<S>::term(cr, t.power, u);
            if (!liesym::is_zero(ci)) im += ExpPoly<S>::term(ci, t.power, u);
            continue;
        }
        // e^{(u + i w) t} = e^{u t} (cos wt + i sin wt)
        re += ExpPoly<S>::trig_term(cr, t.power, u, w, Trig::Cos);
        re += ExpPoly<S>::trig_term(-ci, t.power, u, w, Trig::Sin);
        im += ExpPoly<S>::trig_term(ci, t.power, u, w, Trig::Cos);
        im += ExpPoly<S>::trig_term(cr, t.power, u, w, Trig::Sin);
    }
    return {re, im};
}

}  // namespace liesym
