#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <ostream>
#include <sstream>
#include <string>

namespace axb {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// Floor of a rational, as an integer.
inline Int rational_floor(const Rational& q) {
    Int n = numerator(q), d = denominator(q);
    Int t = n / d;
    if (n < 0 && t * d != n) --t;
    return t;
}

inline Rational fractional_part(const Rational& q) { return q - Rational(rational_floor(q)); }

// Coefficients of algebra elements: a + b*i with a, b exact rationals.
// Closed under product, sum and complex conjugation.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(int r) : re(r) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

inline std::string to_string(const GaussianRational& c) {
    if (c.im == 0) return to_string(c.re);
    std::ostringstream os;
    if (c.re != 0) os << c.re << (c.im > 0 ? "+" : "");
    os << c.im << "i";
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& c) { return os << to_string(c); }

}  // namespace axb
