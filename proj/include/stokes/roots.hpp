#pragma once

#include <vector>

#include "stokes/bigfloat.hpp"
#include "stokes/gaussian.hpp"

namespace stokes {

/// Dense polynomial over Q(i), index = degree.
using GPoly = std::vector<GaussianRational>;

GPoly gpoly_trim(GPoly p);
GPoly gpoly_derivative(const GPoly& p);
GaussianRational gpoly_eval(const GPoly& p, const GaussianRational& x);
/// Quotient and remainder; divisor must be nonzero.
void gpoly_divmod(const GPoly& a, const GPoly& b, GPoly& q, GPoly& r);
/// Monic gcd.
GPoly gpoly_gcd(GPoly a, GPoly b);

/// Rational reconstruction of an mpfr value by continued fractions; the
/// candidate is only trusted after the caller verifies it exactly.
bool snap_to_rational(const Real& x, Rational& out, const BigInt& max_den);

/// All roots of p, each exactly verified in Q(i). Throws UnsupportedOperator
/// when a root is repeated or does not reconstruct as a Gaussian rational.
std::vector<GaussianRational> gaussian_roots(const GPoly& p, const char* what);

}  // namespace stokes
