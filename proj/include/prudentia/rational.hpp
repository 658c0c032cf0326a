#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "prudentia/error.hpp"

namespace prudentia {

using Rational = mpq_class;
using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

/// p/q in lowest terms; the mpq_class(p, q) constructor does not reduce.
inline Rational frac(long p, long q) {
    if (q == 0) throw PreconditionViolated("zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

/// Parses "p/q", "p", or a finite decimal such as "-0.25".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.front() == ' ' || s.front() == '+')) s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty()) throw ParseError("empty rational literal");

    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) throw ParseError("bad rational literal '" + s + "'");
        const bool negative = s.front() == '-';
        std::string digits = s.substr(negative ? 1 : 0);
        const auto d = digits.find('.');
        std::string whole = digits.substr(0, d);
        std::string frac = digits.substr(d + 1);
        if (whole.empty()) whole = "0";
        if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos ||
            whole.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError("bad decimal literal '" + s + "'");
        }
        mpz_class num(whole + frac, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        Rational r(num, den);
        r.canonicalize();
        return negative ? Rational(-r) : r;
    }

    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + s + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline int sign(const Rational& r) { return sgn(r); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact conversion of a finite double (every double is a dyadic rational).
inline Rational from_double(double d) {
    Rational r(d);
    r.canonicalize();
    return r;
}

inline Rational dot(const Vector& a, const Vector& b) {
    Rational s = 0;
    const auto n = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

inline Vector add(const Vector& a, const Vector& b) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Vector subtract(const Vector& a, const Vector& b) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline Vector scale(const Vector& a, const Rational& s) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

inline Vector negate(const Vector& a) { return scale(a, Rational(-1)); }

inline bool is_zero(const Vector& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

inline Vector zeros(std::size_t n) { return Vector(n, Rational(0)); }

/// Least common multiple of all denominators (1 for the empty vector).
inline mpz_class common_denominator(const Vector& v) {
    mpz_class l = 1;
    for (const auto& x : v) {
        mpz_class d = x.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

/// Rescales by a positive factor to coprime integers; zero stays zero.
inline Vector primitive_integer(const Vector& v) {
    if (is_zero(v)) return v;
    Vector out = scale(v, Rational(common_denominator(v)));
    mpz_class g = 0;
    for (const auto& x : out) {
        mpz_class n = x.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    for (auto& x : out) x /= g;
    return out;
}

/// Rescales so the first nonzero entry has absolute value one (sign kept).
inline Vector normalize_leading(const Vector& v) {
    for (const auto& x : v) {
        if (x != 0) return scale(v, Rational(1) / abs(x));
    }
    return v;
}

inline std::vector<std::string> to_strings(const Vector& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

}  // namespace prudentia
