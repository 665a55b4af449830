#pragma once

#include "stokes/gaussian.hpp"
#include "stokes/interval.hpp"

namespace stokes {

/// Rectangular complex enclosure: re x im box.
struct CInterval {
    Interval re, im;

    CInterval() = default;
    CInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
    explicit CInterval(const GaussianRational& g) : re(Interval(g.re)), im(Interval(g.im)) {}
    static CInterval exact(const Rational& r, const Rational& i) {
        return CInterval(Interval(r), Interval(i));
    }

    friend CInterval operator+(const CInterval& a, const CInterval& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend CInterval operator-(const CInterval& a, const CInterval& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend CInterval operator*(const CInterval& a, const CInterval& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    CInterval operator-() const { return {-re, -im}; }

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }

    /// Enclosure of |z| over the box.
    Interval abs() const { return sqrt_i(re * re + im * im); }

    /// Enclosure of the principal argument over a box avoiding the origin and
    /// the cut (negative real axis). Extremes of arg over a rectangle are
    /// attained at corners.
    Interval arg_principal() const;

    /// {r e^{i t}: r in rad, t in ang}; rad must be nonnegative.
    static CInterval from_polar(const Interval& rad, const Interval& ang) {
        return {rad * cos_i(ang), rad * sin_i(ang)};
    }
};

}  // namespace stokes
