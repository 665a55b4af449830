#pragma once

#include <optional>
#include <string>

#include "stokes/gaussian.hpp"
#include "stokes/interval.hpp"

namespace stokes {

/// An angle carried either symbolically (exact rational multiple of pi) or
/// as a certified enclosure. Sector endpoints stay symbolic throughout; the
/// interval form appears for arguments of general Gaussian rationals.
class Angle {
  public:
    static Angle pi_multiple(const Rational& q) {
        Angle a;
        a.pi_mult_ = q;
        return a;
    }
    static Angle from_interval(const Interval& v) {
        Angle a;
        a.enclosure_ = v;
        return a;
    }

    bool is_exact() const { return pi_mult_.has_value(); }
    const Rational& pi_mult() const {
        if (!pi_mult_) throw DomainError("angle is not an exact multiple of pi");
        return *pi_mult_;
    }

    Interval enclosure() const {
        if (pi_mult_) return Interval::pi_times(*pi_mult_);
        return *enclosure_;
    }

    std::string str() const;

  private:
    Angle() = default;
    std::optional<Rational> pi_mult_;
    std::optional<Interval> enclosure_;
};

/// arg(-a) normalized to [0, 2pi); exact when -a lies on an axis or a
/// diagonal, which are the only rational multiples of pi reachable from
/// Gaussian rationals.
Angle phase_of_minus(const GaussianRational& a);

}  // namespace stokes
