#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stokes/puiseux.hpp"

namespace stokes {

/// P = sum a_i(z) d^i with Laurent polynomial coefficients, a_n != 0.
struct ScalarOperator {
    std::vector<PuiseuxPoly> coeffs;  // index = derivative order

    long order() const { return static_cast<long>(coeffs.size()) - 1; }
    const PuiseuxPoly& a(long i) const { return coeffs[static_cast<std::size_t>(i)]; }

    static ScalarOperator make(std::vector<PuiseuxPoly> coeffs);
    std::string str() const;

    friend bool operator==(const ScalarOperator& x, const ScalarOperator& y) {
        return x.coeffs == y.coeffs;
    }
};

/// z^N d I_m + A(z) with A holomorphic at 0.
struct SystemOperator {
    long m = 0;
    long N = 1;
    std::vector<std::vector<PuiseuxPoly>> A;

    static SystemOperator make(long N, std::vector<std::vector<PuiseuxPoly>> A);
};

/// Text grammar: sum of terms, each `coeff ['*'] ['d' ['^' k]]`, where coeff
/// multiplies rational or (a+bi) scalars and integer powers of z.
ScalarOperator parse_operator(std::string_view text);

/// Laurent polynomial literal: the coefficient sublanguage of the operator
/// grammar (no 'd').
PuiseuxPoly parse_poly(std::string_view text);

/// First-order reduction: w = (u, u', ..., u^{(n-1)}), z^N dw + A w = 0.
/// Requires every a_i/a_n to be a Laurent polynomial.
SystemOperator companion_system(const ScalarOperator& op);

/// Operator composition P(Q(.)).
ScalarOperator compose(const ScalarOperator& P, const ScalarOperator& Q);

}  // namespace stokes
