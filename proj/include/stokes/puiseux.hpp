#pragma once

#include <map>
#include <string>

#include "stokes/bigfloat.hpp"
#include "stokes/cinterval.hpp"
#include "stokes/gaussian.hpp"

namespace stokes {

/// Finite Puiseux/Laurent polynomial over Q(i): sum of c_k z^{k/ram}.
/// No zero coefficients are stored and ram is minimal; arithmetic
/// re-canonicalizes, so equality is structural.
class PuiseuxPoly {
  public:
    using TermMap = std::map<long, GaussianRational>;

    PuiseuxPoly() : ram_(1) {}
    static PuiseuxPoly constant(const GaussianRational& c);
    static PuiseuxPoly monomial(const GaussianRational& c, long k, long ram = 1);
    static PuiseuxPoly variable() { return monomial(GaussianRational(1), 1); }

    long ram() const { return ram_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_laurent() const { return ram_ == 1; }
    std::size_t term_count() const { return terms_.size(); }

    /// min k/ram over stored terms; nonzero polynomial required.
    Rational valuation() const;
    Rational degree() const;
    /// Laurent-only integer exponent accessors.
    long val_int() const;
    long deg_int() const;
    GaussianRational coeff_at(long k) const;  // exponent k/ram
    GaussianRational leading_coeff() const;
    GaussianRational trailing_coeff() const;
    bool holomorphic() const { return terms_.empty() || terms_.begin()->first >= 0; }

    friend PuiseuxPoly operator+(const PuiseuxPoly& a, const PuiseuxPoly& b);
    friend PuiseuxPoly operator-(const PuiseuxPoly& a, const PuiseuxPoly& b);
    friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b);
    PuiseuxPoly operator-() const;
    friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) {
        return a.ram_ == b.ram_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const PuiseuxPoly& a, const PuiseuxPoly& b) { return !(a == b); }

    PuiseuxPoly scaled(const GaussianRational& c) const;
    PuiseuxPoly pow(long e) const;  // e < 0 only for monomials
    /// d/dz.
    PuiseuxPoly derivative() const;
    /// z := t^q; result is a Puiseux polynomial in t.
    PuiseuxPoly substitute_pow(long q) const;
    /// Multiply by z^{k/ram_new}: exact monomial shift.
    PuiseuxPoly shifted(long k, long ram = 1) const;

    /// Exact division in the Laurent ring (both operands ram = 1).
    /// Returns false when b does not divide a.
    static bool try_divide(const PuiseuxPoly& a, const PuiseuxPoly& b, PuiseuxPoly& quotient);

    /// Outward enclosure of p over a Cartesian box. Requires the box to
    /// avoid 0 when negative exponents are present and to avoid the branch
    /// cut when fractional exponents force a polar evaluation.
    CInterval eval_box(const CInterval& box) const;
    /// Outward enclosure over a polar box {rho e^{i theta}}; theta is the
    /// sector coordinate, so sectors beyond the principal range work too.
    CInterval eval_polar(const Interval& rho, const Interval& theta) const;
    /// High-precision point evaluation at rho e^{i theta}, round-to-nearest.
    Complex eval_point_polar(const Real& rho, const Real& theta) const;
    /// Point evaluation at a complex number; Laurent (ram = 1) only.
    Complex eval_point(const Complex& z) const;

    std::string str() const;

  private:
    void canonicalize_();
    long ram_;
    TermMap terms_;
};

}  // namespace stokes
