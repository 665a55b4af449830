#pragma once

#include <mpfr.h>

#include <string>

#include "stokes/errors.hpp"
#include "stokes/rational.hpp"

namespace stokes {

/// Closed real interval [lo, hi] with mpfr endpoints and outward rounding.
/// Every operation returns an enclosure of the exact image; that soundness
/// is what turns the sector and temperance checks into certificates.
class Interval {
  public:
    Interval();
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    explicit Interval(const Rational& q);
    Interval(const Rational& lo, const Rational& hi);
    static Interval from_double(double v);
    static Interval pi();
    /// q * pi, outward rounded.
    static Interval pi_times(const Rational& q);
    /// Enclosure of atan2(y, x) for exact rational arguments; (0,0) rejected.
    static Interval atan2_exact(const Rational& y, const Rational& x);

    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    double lo_double() const;   // rounded down
    double hi_double() const;   // rounded up
    double mid_double() const;
    double width_double() const;
    Rational lo_rational() const;  // exact dyadic value of the endpoint
    Rational hi_rational() const;

    bool contains_zero() const;
    bool contains(const Rational& q) const;
    bool is_strictly_positive() const;
    bool is_strictly_negative() const;
    bool intersects(const Interval& o) const;
    bool subset_of(const Interval& o) const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval operator-() const;

    friend Interval abs_i(const Interval& a);
    friend Interval sqrt_i(const Interval& a);            // requires lo >= 0
    friend Interval rootn_i(const Interval& a, unsigned long n);  // requires lo >= 0
    friend Interval pow_int_i(const Interval& a, long k);
    friend Interval cos_i(const Interval& a);
    friend Interval sin_i(const Interval& a);
    friend Interval exp_i(const Interval& a);
    friend Interval log_i(const Interval& a);             // requires lo > 0
    friend Interval hull(const Interval& a, const Interval& b);

    std::string str() const;

  private:
    void init_();
    mpfr_t lo_, hi_;
};

}  // namespace stokes
