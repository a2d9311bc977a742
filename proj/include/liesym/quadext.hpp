#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "liesym/rational.hpp"

namespace liesym {

/// Element a + b*sqrt(d) of a quadratic extension of the rationals. The
/// radicand d is an integer with no small square factor; d < 0 gives an
/// imaginary extension (d = -1 is the Gaussian field). A value with b = 0 is
/// plain rational and carries d = 0, so rationals mix freely with any
/// extension; combining two values with distinct nonzero radicands throws.
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), d_(0) {}
    QuadExt(int n) : a_(n), b_(0), d_(0) {}
    QuadExt(long n) : a_(n), b_(0), d_(0) {}
    QuadExt(Rational r) : a_(std::move(r)), b_(0), d_(0) {}
    QuadExt(Rational a, Rational b, mpz_class d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
        normalize();
    }

    /// Exact square root of a rational: x = (s/q)^2 * d with d square-free as
    /// far as trial division sees; returns (s/q)*sqrt(d), collapsing to a plain
    /// rational when x is a perfect square.
    static QuadExt sqrt_of(const Rational& x) {
        if (x.is_zero()) return QuadExt();
        // sqrt(p/q) = sqrt(p*q)/q
        mpz_class m = x.numerator() * x.denominator();
        int sign = sgn(m) < 0 ? -1 : 1;
        mpz_class rest = ::abs(m), square(1);
        extract_square_part(rest, square);
        QuadExt out;
        out.a_ = Rational(0);
        out.b_ = Rational(square) / Rational(x.denominator());
        out.d_ = sign * rest;
        out.normalize();
        return out;
    }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    const mpz_class& radicand() const { return d_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }
    Rational rational_value() const {
        if (!is_rational()) throw std::domain_error("value is not rational");
        return a_;
    }

    QuadExt conj() const { return QuadExt(a_, -b_, d_); }

    /// a^2 - b^2 d, the field norm; rational and zero only for the zero element.
    Rational norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

    QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        mpz_class d = merge_radicand(x, y);
        return QuadExt(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        mpz_class d = merge_radicand(x, y);
        return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d),
                       x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
        if (y.is_zero()) throw std::domain_error("division by zero");
        if (y.is_rational()) return QuadExt(x.a_ / y.a_, x.b_ / y.a_, x.d_);
        QuadExt num = x * y.conj();
        Rational n = y.norm();
        return QuadExt(num.a_ / n, num.b_ / n, num.d_);
    }

    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    /// Deterministic ordering for use as a canonical sort key; not the numeric
    /// order except within one real extension.
    friend bool operator<(const QuadExt& x, const QuadExt& y) {
        return std::tie(x.d_, x.a_, x.b_) < std::tie(y.d_, y.a_, y.b_);
    }

    /// Exact sign, defined for real extensions (d >= 0) only.
    int sign() const {
        if (d_ < 0) throw std::domain_error("sign of a non-real value");
        if (b_.is_zero()) return a_.sign();
        if (a_.is_zero()) return b_.sign();
        if (a_.sign() == b_.sign()) return a_.sign();
        // a and b*sqrt(d) have opposite signs: compare a^2 against b^2 d.
        int cmp = (a_ * a_ < b_ * b_ * Rational(d_)) ? -1 : 1;
        return cmp < 0 ? b_.sign() : a_.sign();
    }

    std::complex<double> to_complex() const {
        double root = std::sqrt(std::fabs(d_.get_d()));
        if (d_ < 0) return {a_.to_double(), b_.to_double() * root};
        return {a_.to_double() + b_.to_double() * root, 0.0};
    }

    std::string str() const {
        if (is_rational()) return a_.str();
        std::string s;
        if (!a_.is_zero()) s = a_.str() + (b_.sign() > 0 ? "+" : "");
        s += b_.str() + "*sqrt(" + d_.get_str() + ")";
        return s;
    }

private:
    void normalize() {
        if (b_.is_zero()) {
            d_ = 0;
            return;
        }
        if (d_ == 0) {
            b_ = Rational(0);
            return;
        }
        mpz_class rest = ::abs(d_), square(1);
        extract_square_part(rest, square);
        if (square != 1) {
            b_ *= Rational(square);
            d_ = sgn(d_) < 0 ? mpz_class(-rest) : rest;
        }
        if (d_ == 1) {
            a_ += b_;
            b_ = Rational(0);
            d_ = 0;
        } else if (d_ > 0 && a_.sign() == -b_.sign() && a_ * a_ == b_ * b_ * Rational(d_)) {
            // a and b*sqrt(d) cancel exactly (d escaped square extraction).
            a_ = Rational(0);
            b_ = Rational(0);
            d_ = 0;
        }
    }

    /// Pulls the largest square factor discoverable by bounded trial division
    /// (plus a perfect-square check on the cofactor) out of m: on return
    /// m * square^2 equals the original value.
    static void extract_square_part(mpz_class& m, mpz_class& square) {
        static constexpr unsigned long kTrialBound = 100000;
        mpz_class p(2);
        while (p * p <= m && p <= kTrialBound) {
            while (m % (p * p) == 0) {
                m /= p * p;
                square *= p;
            }
            p += (p == 2) ? 1 : 2;
        }
        if (m > 1 && mpz_perfect_square_p(m.get_mpz_t())) {
            mpz_class r;
            mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
            square *= r;
            m = 1;
        }
    }

    static mpz_class merge_radicand(const QuadExt& x, const QuadExt& y) {
        if (x.b_.is_zero()) return y.d_;
        if (y.b_.is_zero()) return x.d_;
        if (x.d_ != y.d_)
            throw std::domain_error("incompatible quadratic extensions: sqrt(" + x.d_.get_str() +
                                    ") vs sqrt(" + y.d_.get_str() + ")");
        return x.d_;
    }

    Rational a_, b_;
    mpz_class d_;
};

inline bool is_zero(const QuadExt& x) { return x.is_zero(); }
inline std::complex<double> to_complex(const QuadExt& x) { return x.to_complex(); }

inline std::ostream& operator<<(std::ostream& os, const QuadExt& q) { return os << q.str(); }

}  // namespace liesym
