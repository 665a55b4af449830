#include "stokes/angle.hpp"

#include <sstream>

namespace stokes {

std::string Angle::str() const {
    std::ostringstream os;
    if (pi_mult_) os << to_string(*pi_mult_) << "*pi";
    else os << enclosure_->str();
    return os.str();
}

Angle phase_of_minus(const GaussianRational& a) {
    if (a.is_zero()) throw DomainError("phase of zero coefficient");
    GaussianRational w = -a;
    if (w.im == 0) return Angle::pi_multiple(w.re > 0 ? Rational(0) : Rational(1));
    if (w.re == 0) return Angle::pi_multiple(w.im > 0 ? Rational(1, 2) : Rational(3, 2));
    if (rational_abs(w.re) == rational_abs(w.im)) {
        if (w.re > 0 && w.im > 0) return Angle::pi_multiple(Rational(1, 4));
        if (w.re < 0 && w.im > 0) return Angle::pi_multiple(Rational(3, 4));
        if (w.re < 0 && w.im < 0) return Angle::pi_multiple(Rational(5, 4));
        return Angle::pi_multiple(Rational(7, 4));
    }
    Interval v = Interval::atan2_exact(w.im, w.re);
    // Normalize (-pi, pi] to [0, 2pi). The enclosure is tiny and w is off
    // the axes, so its sign is determined.
    if (v.is_strictly_negative()) v = v + Interval::pi_times(Rational(2));
    else if (!v.is_strictly_positive())
        throw CertificationFailure("phase enclosure straddles zero unexpectedly");
    return Angle::from_interval(v);
}

}  // namespace stokes
