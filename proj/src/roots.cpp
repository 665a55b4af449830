#include "stokes/roots.hpp"

#include <algorithm>
#include <string>

#include "stokes/errors.hpp"

namespace stokes {

GPoly gpoly_trim(GPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

GPoly gpoly_derivative(const GPoly& p) {
    GPoly d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * GaussianRational(Rational(static_cast<long>(i))));
    return gpoly_trim(std::move(d));
}

GaussianRational gpoly_eval(const GPoly& p, const GaussianRational& x) {
    GaussianRational acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void gpoly_divmod(const GPoly& a, const GPoly& b, GPoly& q, GPoly& r) {
    GPoly bb = gpoly_trim(b);
    if (bb.empty()) throw DomainError("polynomial division by zero");
    r = gpoly_trim(a);
    q.assign(r.size() > bb.size() ? r.size() - bb.size() + 1 : 1, GaussianRational());
    while (r.size() >= bb.size() && !r.empty()) {
        GaussianRational c = r.back() / bb.back();
        std::size_t shift = r.size() - bb.size();
        q[shift] = c;
        for (std::size_t i = 0; i < bb.size(); ++i) r[shift + i] -= c * bb[i];
        r = gpoly_trim(std::move(r));
    }
    q = gpoly_trim(std::move(q));
}

GPoly gpoly_gcd(GPoly a, GPoly b) {
    a = gpoly_trim(std::move(a));
    b = gpoly_trim(std::move(b));
    while (!b.empty()) {
        GPoly q, r;
        gpoly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        GaussianRational lc = a.back();
        for (auto& c : a) c /= lc;
    }
    return a;
}

bool snap_to_rational(const Real& x, Rational& out, const BigInt& max_den) {
    // Continued-fraction convergents of x until the residual is tiny.
    long prec = working_precision_bits();
    Real v = x;
    BigInt h0(0), h1(1), k0(1), k1(0);
    Real tol = pow(Real(2.0), Real(static_cast<long>(-(prec * 2) / 3)));
    for (int it = 0; it < 128; ++it) {
        if (!mpfr_number_p(v.get())) return false;
        mpfr_t fl;
        mpfr_init2(fl, prec);
        mpfr_floor(fl, v.get());
        mpz_t zf;
        mpz_init(zf);
        mpfr_get_z(zf, fl, MPFR_RNDN);
        BigInt a(zf);
        mpz_clear(zf);
        Real fl_r;
        mpfr_set(fl_r.get(), fl, MPFR_RNDN);
        mpfr_clear(fl);

        BigInt h2 = a * h1 + h0;
        BigInt k2 = a * k1 + k0;
        if (k2 > max_den) return false;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;

        Real frac = v - fl_r;
        // Residual check: |x - h1/k1| small enough.
        Rational cand(h1, k1);
        Real err = abs(x - Real(cand));
        if (err < tol) {
            out = cand;
            return true;
        }
        if (frac.is_zero()) return false;
        v = Real(1L) / frac;
    }
    return false;
}

std::vector<GaussianRational> gaussian_roots(const GPoly& poly, const char* what) {
    GPoly p = gpoly_trim(poly);
    if (p.size() <= 1) return {};
    std::size_t deg = p.size() - 1;

    GPoly sq = gpoly_gcd(p, gpoly_derivative(p));
    if (sq.size() > 1)
        throw UnsupportedOperator(std::string(what) + ": repeated characteristic root");

    if (deg == 1) {
        return {-(p[0] / p[1])};
    }

    // Durand-Kerner at working precision, then exact reconstruction.
    long prec = working_precision_bits();
    std::vector<Complex> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        c[i] = Complex(p[i] / p.back());

    double radius = 1.0;
    for (std::size_t i = 0; i < deg; ++i)
        radius = std::max(radius, 1.0 + std::hypot(c[i].re.to_double(), c[i].im.to_double()));
    std::vector<Complex> r(deg);
    {
        // Spread initial guesses on a circle with an irrational-ish twist.
        Real ang0 = Real(0.4);
        for (std::size_t j = 0; j < deg; ++j) {
            Real t = Real(static_cast<long>(j)) * Real(2.0) * Real::pi() / Real(static_cast<long>(deg)) + ang0;
            r[j] = Complex(Real(radius) * cos(t), Real(radius) * sin(t));
        }
    }
    auto eval = [&](const Complex& x) {
        Complex acc(Real(0L), Real(0L));
        for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    };
    Real stop = pow(Real(2.0), Real(-(prec * 3) / 4));
    for (int it = 0; it < 400; ++it) {
        Real worst(0L);
        for (std::size_t j = 0; j < deg; ++j) {
            Complex den(Real(1L), Real(0L));
            for (std::size_t k = 0; k < deg; ++k)
                if (k != j) den = den * (r[j] - r[k]);
            Complex corr = eval(r[j]) / den;
            r[j] = r[j] - corr;
            Real m = abs(corr);
            if (worst < m) worst = m;
        }
        if (worst < stop) break;
    }

    BigInt max_den = boost::multiprecision::pow(BigInt(10), 24);
    std::vector<GaussianRational> out;
    for (std::size_t j = 0; j < deg; ++j) {
        Rational re, im;
        if (!snap_to_rational(r[j].re, re, max_den) || !snap_to_rational(r[j].im, im, max_den))
            throw UnsupportedOperator(std::string(what) +
                                      ": characteristic root is not a representable Gaussian rational");
        GaussianRational g(re, im);
        if (!gpoly_eval(p, g).is_zero())
            throw UnsupportedOperator(std::string(what) +
                                      ": characteristic root failed exact verification");
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end());
    for (std::size_t j = 0; j + 1 < out.size(); ++j)
        if (out[j] == out[j + 1])
            throw UnsupportedOperator(std::string(what) + ": repeated characteristic root");
    return out;
}

}  // namespace stokes
