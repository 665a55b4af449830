#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <string_view>

#include "stokes/errors.hpp"

namespace stokes {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// "p" when the denominator is 1, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Accepts "p", "p/q" and decimal literals like "0.25" or "-1.5e-3".
Rational rational_from_string(std::string_view text);

Rational pow_rational(const Rational& base, long e);

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Floor of p/q as an integer.
inline BigInt rational_floor(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return f;
}

/// Exact square root when the argument is a perfect square; returns false otherwise.
bool rational_sqrt_exact(const Rational& q, Rational& out);

}  // namespace stokes
