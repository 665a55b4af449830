#include "stokes/gaussian.hpp"

namespace stokes {

std::string GaussianRational::str() const {
    if (im == 0) return to_string(re);
    if (re == 0) return to_string(im) + "i";
    std::string s = "(" + to_string(re);
    if (im > 0) s += "+";
    s += to_string(im) + "i)";
    return s;
}

bool gaussian_sqrt_exact(const GaussianRational& s, GaussianRational& out) {
    if (s.is_zero()) {
        out = GaussianRational();
        return true;
    }
    if (s.im == 0) {
        Rational r;
        if (s.re > 0) {
            if (!rational_sqrt_exact(s.re, r)) return false;
            out = GaussianRational(r);
            return true;
        }
        if (!rational_sqrt_exact(-s.re, r)) return false;
        out = GaussianRational(Rational(0), r);
        return true;
    }
    // x + yi with (x+yi)^2 = s: x^2 = (re + |s|)/2, y = im/(2x).
    Rational mod;
    if (!rational_sqrt_exact(s.norm2(), mod)) return false;
    Rational x2 = (s.re + mod) / 2;
    Rational x;
    if (!rational_sqrt_exact(x2, x)) return false;
    if (x == 0) return false;  // im != 0 forces x != 0
    out = GaussianRational(x, s.im / (2 * x));
    return true;
}

GaussianRational gaussian_pow(const GaussianRational& base, long e) {
    if (e == 0) return GaussianRational(1);
    GaussianRational b = base;
    if (e < 0) b = GaussianRational(1) / base;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    GaussianRational acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

}  // namespace stokes
