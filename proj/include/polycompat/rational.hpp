#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace polycompat {

/// Exact rational scalar. Always stored in lowest terms with positive
/// denominator; all polytope-side data in this library is built from it.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline BigInt rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Parses integer or fraction strings of the form num[/den].
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
    std::string s = rat_num(q).str();
    if (rat_den(q) != 1) s += "/" + rat_den(q).str();
    return s;
}

/// Complex number with exact rational real and imaginary parts
/// (a Gaussian rational). Scalar type of the exact Hermitian backend.
struct GRational {
    Rational re;
    Rational im;

    GRational() = default;
    GRational(Rational r) : re(std::move(r)) {}
    GRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GRational(long long r) : re(r) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GRational conj() const { return {re, -im}; }

    friend GRational operator+(const GRational& a, const GRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GRational operator-(const GRational& a, const GRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GRational operator-(const GRational& a) { return {-a.re, -a.im}; }
    friend GRational operator*(const GRational& a, const GRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GRational operator/(const GRational& a, const GRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero GRational");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GRational& operator+=(const GRational& b) { return *this = *this + b; }
    GRational& operator-=(const GRational& b) { return *this = *this - b; }
    GRational& operator*=(const GRational& b) { return *this = *this * b; }
    GRational& operator/=(const GRational& b) { return *this = *this / b; }

    friend bool operator==(const GRational& a, const GRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GRational& a, const GRational& b) { return !(a == b); }

    /// Squared modulus, an exact nonnegative rational.
    Rational norm2() const { return re * re + im * im; }

    friend std::ostream& operator<<(std::ostream& os, const GRational& z) {
        os << to_string(z.re);
        if (z.im != 0) os << (z.im > 0 ? "+" : "") << to_string(z.im) << "i";
        return os;
    }
};

inline GRational grat(long long re_n, long long re_d, long long im_n = 0, long long im_d = 1) {
    return {rat(re_n, re_d), rat(im_n, im_d)};
}

/// Field-element helpers shared by the generic linear algebra code.
inline bool field_is_zero(const Rational& x) { return x == 0; }
inline bool field_is_zero(const GRational& x) { return x.is_zero(); }

} // namespace polycompat
