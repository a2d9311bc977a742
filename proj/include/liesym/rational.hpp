#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace liesym {

/// Exact rational number backed by GMP. Always stored in lowest terms with a
/// positive denominator; the canonical zero is 0/1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpz_class n) : v_(std::move(n)) {}
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
    explicit Rational(const std::string& text) {
        if (text.empty()) throw std::invalid_argument("empty rational literal");
        try {
            v_ = mpq_class(text);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("malformed rational literal: " + text);
        }
        if (v_.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
        v_.canonicalize();
    }

    const mpq_class& value() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return Rational(mpq_class(1) / v_);
    }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    Rational pow(unsigned e) const {
        mpq_class r(1), base = v_;
        for (unsigned k = e; k > 0; k >>= 1) {
            if (k & 1) r *= base;
            if (k > 1) base *= base;
        }
        return Rational(r);
    }

    double to_double() const { return v_.get_d(); }

    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

private:
    mpq_class v_;
};

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline std::complex<double> to_complex(const Rational& x) { return {x.to_double(), 0.0}; }

inline bool is_zero(const std::complex<double>& x) { return x.real() == 0.0 && x.imag() == 0.0; }
inline std::complex<double> to_complex(const std::complex<double>& x) { return x; }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace liesym
