#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "stokes/gaussian.hpp"
#include "stokes/rational.hpp"

namespace stokes {

/// Working precision in bits for the calling thread. Initialized from the
/// STOKES_GATE_PRECISION environment variable (decimal digits, default 50).
long working_precision_bits();
void set_working_precision_bits(long bits);
long digits_to_bits(long digits);

struct ScopedPrecision {
    long saved;
    explicit ScopedPrecision(long bits) : saved(working_precision_bits()) {
        set_working_precision_bits(bits);
    }
    ~ScopedPrecision() { set_working_precision_bits(saved); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;
};

/// RAII mpfr_t with value semantics, rounded to nearest. The certified
/// interval layer does not use this type; it drives mpfr directly with
/// directed rounding.
class Real {
  public:
    Real() { mpfr_init2(x_, working_precision_bits()); mpfr_set_zero(x_, 1); }
    explicit Real(double v) : Real() { mpfr_set_d(x_, v, MPFR_RNDN); }
    explicit Real(long v) : Real() { mpfr_set_si(x_, v, MPFR_RNDN); }
    explicit Real(const Rational& q) : Real() {
        mpfr_set_q(x_, q.backend().data(), MPFR_RNDN);
    }
    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, 64); mpfr_swap(x_, o.x_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(x_, o.x_); return *this; }
    ~Real() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(x_); }
    int sign() const { return mpfr_sgn(x_); }

    friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    Real operator-() const { Real r; mpfr_neg(r.x_, x_, MPFR_RNDN); return r; }
    Real& operator+=(const Real& b) { mpfr_add(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& b) { mpfr_sub(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& b) { mpfr_mul(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& b) { mpfr_div(x_, x_, b.x_, MPFR_RNDN); return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.x_, b.x_) != 0; }

    friend Real abs(const Real& a) { Real r; mpfr_abs(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real sqrt(const Real& a) { Real r; mpfr_sqrt(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real log(const Real& a) { Real r; mpfr_log(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real exp(const Real& a) { Real r; mpfr_exp(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real cos(const Real& a) { Real r; mpfr_cos(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real sin(const Real& a) { Real r; mpfr_sin(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real atan(const Real& a) { Real r; mpfr_atan(r.x_, a.x_, MPFR_RNDN); return r; }
    friend Real hypot(const Real& a, const Real& b) { Real r; mpfr_hypot(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    friend Real pow(const Real& a, const Real& b) { Real r; mpfr_pow(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }
    friend Real min(const Real& a, const Real& b) { return a < b ? a : b; }

    static Real pi() { Real r; mpfr_const_pi(r.x_, MPFR_RNDN); return r; }
    static Real nth_root(const Real& a, unsigned long n) {
        Real r; mpfr_rootn_ui(r.x_, a.x_, n, MPFR_RNDN); return r;
    }

  private:
    mpfr_t x_;
};

/// High-precision complex value for the numerical oracle.
struct Complex {
    Real re, im;
    Complex() = default;
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(double r, double i = 0.0) : re(r), im(i) {}
    explicit Complex(const GaussianRational& g) : re(g.re), im(g.im) {}

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real n = b.re * b.re + b.im * b.im;
        Complex num = a * Complex(b.re, -b.im);
        return {num.re / n, num.im / n};
    }
    Complex operator-() const { return {-re, -im}; }
    Complex& operator+=(const Complex& b) { re += b.re; im += b.im; return *this; }

    friend Real abs(const Complex& a) { return hypot(a.re, a.im); }
    /// max(|re|, |im|): cheap norm used for renormalization.
    friend Real sup_norm(const Complex& a) { return max(abs(a.re), abs(a.im)); }
};

}  // namespace stokes
