#include "stokes/interval.hpp"

#include <algorithm>
#include <sstream>

#include "stokes/bigfloat.hpp"

namespace stokes {

void Interval::init_() {
    long p = working_precision_bits();
    mpfr_init2(lo_, p);
    mpfr_init2(hi_, p);
}

Interval::Interval() {
    init_();
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
    mpfr_init2(lo_, 64);
    mpfr_init2(hi_, 64);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval::Interval(const Rational& q) {
    init_();
    mpfr_set_q(lo_, q.backend().data(), MPFR_RNDD);
    mpfr_set_q(hi_, q.backend().data(), MPFR_RNDU);
}

Interval::Interval(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw DomainError("interval endpoints out of order");
    init_();
    mpfr_set_q(lo_, lo.backend().data(), MPFR_RNDD);
    mpfr_set_q(hi_, hi.backend().data(), MPFR_RNDU);
}

Interval Interval::from_double(double v) {
    Interval r;
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::pi() {
    Interval r;
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::pi_times(const Rational& q) { return pi() * Interval(q); }

Interval Interval::atan2_exact(const Rational& y, const Rational& x) {
    if (x == 0 && y == 0) throw DomainError("atan2(0,0)");
    // Bracket both arguments by their dyadic roundings and hull atan2 over
    // the corners. The bracket box is at most one ulp wide per side, cannot
    // contain the origin, and cannot straddle the cut: y = 0 is exact and a
    // nonzero y keeps its sign under directed rounding. atan2 extremes over
    // such a box sit at corners.
    Interval X(x), Y(y);
    Interval r;
    bool first = true;
    mpfr_t t;
    mpfr_init2(t, working_precision_bits());
    mpfr_srcptr xs[2] = {X.lo_, X.hi_};
    mpfr_srcptr ys[2] = {Y.lo_, Y.hi_};
    for (auto cx : xs)
        for (auto cy : ys) {
            if (mpfr_zero_p(cx) && mpfr_zero_p(cy)) continue;
            mpfr_atan2(t, cy, cx, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_atan2(t, cy, cx, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double Interval::mid_double() const { return 0.5 * (lo_double() + hi_double()); }

double Interval::width_double() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

Rational Interval::lo_rational() const {
    if (!mpfr_number_p(lo_)) throw DomainError("non-finite interval endpoint");
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, lo_);
    Rational r(q);
    mpq_clear(q);
    return r;
}

Rational Interval::hi_rational() const {
    if (!mpfr_number_p(hi_)) throw DomainError("non-finite interval endpoint");
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, hi_);
    Rational r(q);
    mpq_clear(q);
    return r;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::contains(const Rational& q) const {
    return mpfr_cmp_q(lo_, q.backend().data()) <= 0 && mpfr_cmp_q(hi_, q.backend().data()) >= 0;
}

bool Interval::is_strictly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_strictly_negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::intersects(const Interval& o) const {
    return mpfr_cmp(lo_, o.hi_) <= 0 && mpfr_cmp(o.lo_, hi_) <= 0;
}

bool Interval::subset_of(const Interval& o) const {
    return mpfr_cmp(o.lo_, lo_) <= 0 && mpfr_cmp(hi_, o.hi_) <= 0;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    Interval r;
    int sa_lo = mpfr_sgn(a.lo_), sa_hi = mpfr_sgn(a.hi_);
    int sb_lo = mpfr_sgn(b.lo_), sb_hi = mpfr_sgn(b.hi_);
    // Sign-separated cases need two multiplications; only the straddle x
    // straddle case needs four.
    if (sa_lo >= 0) {
        if (sb_lo >= 0) {
            mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
            mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        } else if (sb_hi <= 0) {
            mpfr_mul(r.lo_, a.hi_, b.lo_, MPFR_RNDD);
            mpfr_mul(r.hi_, a.lo_, b.hi_, MPFR_RNDU);
        } else {
            mpfr_mul(r.lo_, a.hi_, b.lo_, MPFR_RNDD);
            mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        }
        return r;
    }
    if (sa_hi <= 0) {
        if (sb_lo >= 0) {
            mpfr_mul(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
            mpfr_mul(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        } else if (sb_hi <= 0) {
            mpfr_mul(r.lo_, a.hi_, b.hi_, MPFR_RNDD);
            mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        } else {
            mpfr_mul(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
            mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        }
        return r;
    }
    if (sb_lo >= 0) {
        mpfr_mul(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    if (sb_hi <= 0) {
        mpfr_mul(r.lo_, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        return r;
    }
    mpfr_t t;
    mpfr_init2(t, working_precision_bits());
    mpfr_mul(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DomainError("interval division by zero");
    Interval r;
    mpfr_t t;
    mpfr_init2(t, working_precision_bits());
    mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_div(t, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_div(t, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval Interval::operator-() const {
    Interval r;
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval abs_i(const Interval& a) {
    if (mpfr_sgn(a.lo_) >= 0) return a;
    if (mpfr_sgn(a.hi_) <= 0) return -a;
    Interval r;
    mpfr_set_zero(r.lo_, 1);
    mpfr_t n;
    mpfr_init2(n, working_precision_bits());
    mpfr_neg(n, a.lo_, MPFR_RNDU);
    if (mpfr_cmp(n, a.hi_) > 0) mpfr_set(r.hi_, n, MPFR_RNDU);
    else mpfr_set(r.hi_, a.hi_, MPFR_RNDU);
    mpfr_clear(n);
    return r;
}

Interval sqrt_i(const Interval& a) {
    if (mpfr_sgn(a.lo_) < 0) throw DomainError("sqrt of interval with negative part");
    Interval r;
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval rootn_i(const Interval& a, unsigned long n) {
    if (n == 0) throw DomainError("0th root");
    if (mpfr_sgn(a.lo_) < 0) throw DomainError("nth root of interval with negative part");
    Interval r;
    mpfr_rootn_ui(r.lo_, a.lo_, n, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_, a.hi_, n, MPFR_RNDU);
    return r;
}

Interval pow_int_i(const Interval& a, long k) {
    if (k == 0) return Interval(Rational(1));
    if (k < 0) {
        if (a.contains_zero()) throw DomainError("negative power of interval containing zero");
        return Interval(Rational(1)) / pow_int_i(a, -k);
    }
    Interval r;
    bool even = (k % 2 == 0);
    if (mpfr_sgn(a.lo_) >= 0) {
        mpfr_pow_si(r.lo_, a.lo_, k, MPFR_RNDD);
        mpfr_pow_si(r.hi_, a.hi_, k, MPFR_RNDU);
    } else if (mpfr_sgn(a.hi_) <= 0) {
        if (even) {
            mpfr_pow_si(r.lo_, a.hi_, k, MPFR_RNDD);
            mpfr_pow_si(r.hi_, a.lo_, k, MPFR_RNDU);
        } else {
            mpfr_pow_si(r.lo_, a.lo_, k, MPFR_RNDD);
            mpfr_pow_si(r.hi_, a.hi_, k, MPFR_RNDU);
        }
    } else if (even) {
        mpfr_set_zero(r.lo_, 1);
        mpfr_t n;
        mpfr_init2(n, working_precision_bits());
        mpfr_pow_si(n, a.lo_, k, MPFR_RNDU);
        mpfr_pow_si(r.hi_, a.hi_, k, MPFR_RNDU);
        if (mpfr_cmp(n, r.hi_) > 0) mpfr_set(r.hi_, n, MPFR_RNDU);
        mpfr_clear(n);
    } else {
        mpfr_pow_si(r.lo_, a.lo_, k, MPFR_RNDD);
        mpfr_pow_si(r.hi_, a.hi_, k, MPFR_RNDU);
    }
    return r;
}

Interval cos_i(const Interval& a) {
    long p = working_precision_bits();
    Interval full(Rational(-1), Rational(1));

    // Candidate multiples of pi located in double precision; the inclusion
    // margin errs toward keeping a candidate, which can only widen the
    // enclosure.
    double lo_d = mpfr_get_d(a.lo_, MPFR_RNDD);
    double hi_d = mpfr_get_d(a.hi_, MPFR_RNDU);
    if (!std::isfinite(lo_d) || !std::isfinite(hi_d)) return full;
    const double PI_D = 3.141592653589793238462643383279502884;
    double k0 = std::floor(lo_d / PI_D) - 1, k1 = std::ceil(hi_d / PI_D) + 1;
    if (k1 - k0 > 64) return full;
    long kmin = static_cast<long>(k0), kmax = static_cast<long>(k1);

    // Endpoint values: round-to-nearest, widened by one ulp each side.
    Interval r;
    mpfr_t t;
    mpfr_init2(t, p);
    mpfr_cos(t, a.lo_, MPFR_RNDN);
    mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_nextbelow(r.lo_);
    mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_nextabove(r.hi_);
    mpfr_cos(t, a.hi_, MPFR_RNDN);
    mpfr_nextbelow(t);
    if (mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_nextabove(t);
    mpfr_nextabove(t);
    if (mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);

    for (long k = kmin; k <= kmax; ++k) {
        double kpi = static_cast<double>(k) * PI_D;
        // skip only when k*pi is certainly outside [lo, hi]
        if (kpi + 1e-9 < lo_d || kpi - 1e-9 > hi_d) continue;
        if (k % 2 == 0) mpfr_set_si(r.hi_, 1, MPFR_RNDU);
        else mpfr_set_si(r.lo_, -1, MPFR_RNDD);
    }
    if (mpfr_cmp_si(r.lo_, -1) < 0) mpfr_set_si(r.lo_, -1, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi_, 1) > 0) mpfr_set_si(r.hi_, 1, MPFR_RNDU);
    return r;
}

Interval sin_i(const Interval& a) {
    // sin(x) = cos(x - pi/2)
    Interval shift = Interval::pi() * Interval(Rational(1, 2));
    return cos_i(a - shift);
}

Interval exp_i(const Interval& a) {
    Interval r;
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval log_i(const Interval& a) {
    if (mpfr_sgn(a.lo_) <= 0) throw DomainError("log of interval touching zero");
    Interval r;
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval hull(const Interval& a, const Interval& b) {
    Interval r(a);
    if (mpfr_cmp(b.lo_, r.lo_) < 0) mpfr_set(r.lo_, b.lo_, MPFR_RNDD);
    if (mpfr_cmp(b.hi_, r.hi_) > 0) mpfr_set(r.hi_, b.hi_, MPFR_RNDU);
    return r;
}

std::string Interval::str() const {
    std::ostringstream os;
    os << "[" << lo_double() << ", " << hi_double() << "]";
    return os.str();
}

}  // namespace stokes
