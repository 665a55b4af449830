#include "stokes/cinterval.hpp"

namespace stokes {

Interval CInterval::arg_principal() const {
    if (contains_zero()) throw DomainError("argument of box containing the origin");
    // The cut sits on the negative real axis; a box reaching it from below
    // (or from both sides) has no continuous principal argument. Touching it
    // from above is fine: atan2 tends to +pi there.
    if (mpfr_sgn(re.lo()) < 0 && mpfr_sgn(im.lo()) < 0 && mpfr_sgn(im.hi()) >= 0)
        throw BranchAmbiguity("box crosses the branch cut on the negative real axis");

    // atan2 over each corner, outward rounded, hulled. Corners are exact
    // dyadic numbers, so the corner evaluations enclose the true extremes.
    Rational xs[2] = {re.lo_rational(), re.hi_rational()};
    Rational ys[2] = {im.lo_rational(), im.hi_rational()};
    bool first = true;
    Interval acc;
    for (const auto& x : xs)
        for (const auto& y : ys) {
            if (x == 0 && y == 0) continue;
            Interval c = Interval::atan2_exact(y, x);
            acc = first ? c : hull(acc, c);
            first = false;
        }
    return acc;
}

}  // namespace stokes
