#include "stokes/puiseux.hpp"

#include <numeric>
#include <sstream>

namespace stokes {

namespace {
long gcd_l(long a, long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }
}

void PuiseuxPoly::canonicalize_() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
    if (terms_.empty()) {
        ram_ = 1;
        return;
    }
    long g = ram_;
    for (const auto& [k, c] : terms_) g = gcd_l(g, k);
    if (g > 1) {
        TermMap reduced;
        for (const auto& [k, c] : terms_) reduced.emplace(k / g, c);
        terms_ = std::move(reduced);
        ram_ /= g;
    }
}

PuiseuxPoly PuiseuxPoly::constant(const GaussianRational& c) {
    PuiseuxPoly p;
    if (!c.is_zero()) p.terms_.emplace(0, c);
    return p;
}

PuiseuxPoly PuiseuxPoly::monomial(const GaussianRational& c, long k, long ram) {
    if (ram < 1) throw DomainError("ramification index must be positive");
    PuiseuxPoly p;
    p.ram_ = ram;
    if (!c.is_zero()) p.terms_.emplace(k, c);
    p.canonicalize_();
    return p;
}

Rational PuiseuxPoly::valuation() const {
    if (terms_.empty()) throw DomainError("valuation of zero polynomial");
    return Rational(terms_.begin()->first, ram_);
}

Rational PuiseuxPoly::degree() const {
    if (terms_.empty()) throw DomainError("degree of zero polynomial");
    return Rational(terms_.rbegin()->first, ram_);
}

long PuiseuxPoly::val_int() const {
    if (ram_ != 1) throw DomainError("integer valuation of ramified polynomial");
    if (terms_.empty()) throw DomainError("valuation of zero polynomial");
    return terms_.begin()->first;
}

long PuiseuxPoly::deg_int() const {
    if (ram_ != 1) throw DomainError("integer degree of ramified polynomial");
    if (terms_.empty()) throw DomainError("degree of zero polynomial");
    return terms_.rbegin()->first;
}

GaussianRational PuiseuxPoly::coeff_at(long k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? GaussianRational() : it->second;
}

GaussianRational PuiseuxPoly::leading_coeff() const {
    if (terms_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return terms_.rbegin()->second;
}

GaussianRational PuiseuxPoly::trailing_coeff() const {
    if (terms_.empty()) throw DomainError("trailing coefficient of zero polynomial");
    return terms_.begin()->second;
}

PuiseuxPoly operator+(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    long L = std::lcm(a.ram_, b.ram_);
    PuiseuxPoly r;
    r.ram_ = L;
    for (const auto& [k, c] : a.terms_) r.terms_[k * (L / a.ram_)] += c;
    for (const auto& [k, c] : b.terms_) r.terms_[k * (L / b.ram_)] += c;
    r.canonicalize_();
    return r;
}

PuiseuxPoly operator-(const PuiseuxPoly& a, const PuiseuxPoly& b) { return a + (-b); }

PuiseuxPoly PuiseuxPoly::operator-() const {
    PuiseuxPoly r(*this);
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    long L = std::lcm(a.ram_, b.ram_);
    PuiseuxPoly r;
    r.ram_ = L;
    long sa = L / a.ram_, sb = L / b.ram_;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) r.terms_[ka * sa + kb * sb] += ca * cb;
    r.canonicalize_();
    return r;
}

PuiseuxPoly PuiseuxPoly::scaled(const GaussianRational& c) const {
    PuiseuxPoly r;
    if (c.is_zero()) return r;
    r.ram_ = ram_;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    r.canonicalize_();
    return r;
}

PuiseuxPoly PuiseuxPoly::pow(long e) const {
    if (e == 0) return constant(GaussianRational(1));
    if (e < 0) {
        if (terms_.size() != 1) throw DomainError("negative power of non-monomial");
        const auto& [k, c] = *terms_.begin();
        return monomial(gaussian_pow(c, e), k * e, ram_);
    }
    PuiseuxPoly acc = constant(GaussianRational(1));
    PuiseuxPoly base = *this;
    long n = e;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

PuiseuxPoly PuiseuxPoly::derivative() const {
    PuiseuxPoly r;
    r.ram_ = ram_;
    for (const auto& [k, c] : terms_) {
        if (k == 0) continue;
        r.terms_.emplace(k - ram_, c * GaussianRational(Rational(k, ram_)));
    }
    r.canonicalize_();
    return r;
}

PuiseuxPoly PuiseuxPoly::substitute_pow(long q) const {
    if (q < 1) throw DomainError("substitution exponent must be positive");
    PuiseuxPoly r;
    r.ram_ = ram_;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k * q, c);
    r.canonicalize_();
    return r;
}

PuiseuxPoly PuiseuxPoly::shifted(long k, long ram) const {
    return *this * monomial(GaussianRational(1), k, ram);
}

bool PuiseuxPoly::try_divide(const PuiseuxPoly& a, const PuiseuxPoly& b, PuiseuxPoly& quotient) {
    if (!a.is_laurent() || !b.is_laurent()) throw DomainError("Laurent division requires ram=1");
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    if (a.is_zero()) {
        quotient = PuiseuxPoly();
        return true;
    }
    // Strip monomial units: a = z^{va} A, b = z^{vb} B with A(0), B(0) != 0.
    long va = a.val_int(), vb = b.val_int();
    std::map<long, GaussianRational> A, B;
    for (const auto& [k, c] : a.terms_) A.emplace(k - va, c);
    for (const auto& [k, c] : b.terms_) B.emplace(k - vb, c);
    long degA = A.rbegin()->first, degB = B.rbegin()->first;
    if (degA < degB) return false;
    GaussianRational lcB = B.rbegin()->second;
    std::map<long, GaussianRational> Q;
    // Long division from the top.
    std::map<long, GaussianRational> R = A;
    while (!R.empty() && R.rbegin()->first >= degB) {
        long d = R.rbegin()->first - degB;
        GaussianRational q = R.rbegin()->second / lcB;
        Q.emplace(d, q);
        for (const auto& [kb, cb] : B) {
            auto it = R.find(kb + d);
            GaussianRational nv = (it == R.end() ? GaussianRational() : it->second) - q * cb;
            if (nv.is_zero()) {
                if (it != R.end()) R.erase(it);
            } else if (it == R.end()) {
                R.emplace(kb + d, nv);
            } else {
                it->second = nv;
            }
        }
    }
    if (!R.empty()) return false;
    PuiseuxPoly out;
    out.ram_ = 1;
    for (const auto& [k, c] : Q) out.terms_.emplace(k + va - vb, c);
    out.canonicalize_();
    quotient = out;
    return true;
}

CInterval PuiseuxPoly::eval_box(const CInterval& box) const {
    if (terms_.empty()) return CInterval();
    bool negative_exp = terms_.begin()->first < 0;
    if (ram_ == 1 && !negative_exp) {
        // Horner in rectangular arithmetic; no branch choices involved.
        CInterval acc;
        long prev = 0;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) {
                for (long i = 0; i < prev - it->first; ++i) acc = acc * box;
            }
            acc = acc + CInterval(it->second);
            prev = it->first;
            first = false;
        }
        for (long i = 0; i < prev; ++i) acc = acc * box;
        return acc;
    }
    if (negative_exp && box.contains_zero())
        throw DomainError("0 in evaluation box with negative exponents present");
    Interval rho = box.abs();
    Interval theta = box.arg_principal();
    return eval_polar(rho, theta);
}

CInterval PuiseuxPoly::eval_polar(const Interval& rho, const Interval& theta) const {
    if (terms_.empty()) return CInterval();
    bool negative_exp = terms_.begin()->first < 0;
    if (negative_exp && rho.contains_zero())
        throw DomainError("0 in evaluation box with negative exponents present");
    Interval s = ram_ == 1 ? rho : rootn_i(rho, static_cast<unsigned long>(ram_));
    CInterval acc;
    for (const auto& [k, c] : terms_) {
        Interval rad = pow_int_i(s, k);
        Interval ang = theta * Interval(Rational(k, ram_));
        CInterval t = CInterval::from_polar(rad, ang) * CInterval(c);
        acc = acc + t;
    }
    return acc;
}

Complex PuiseuxPoly::eval_point_polar(const Real& rho, const Real& theta) const {
    Complex acc(Real(0L), Real(0L));
    if (terms_.empty()) return acc;
    Real lr = log(rho);
    for (const auto& [k, c] : terms_) {
        Real e = Real(Rational(k, ram_));
        Real mag = exp(e * lr);
        Real ang = e * theta;
        Complex t(mag * cos(ang), mag * sin(ang));
        acc += t * Complex(c);
    }
    return acc;
}

Complex PuiseuxPoly::eval_point(const Complex& z) const {
    if (ram_ != 1) throw DomainError("point evaluation of ramified polynomial needs polar form");
    Complex acc(Real(0L), Real(0L));
    if (terms_.empty()) return acc;
    // Split nonnegative and negative exponents; Horner both ways.
    Complex zi = Complex(Real(1L), Real(0L)) / z;
    for (const auto& [k, c] : terms_) {
        Complex p(Real(1L), Real(0L));
        Complex base = k >= 0 ? z : zi;
        for (long i = 0; i < (k >= 0 ? k : -k); ++i) p = p * base;
        acc += p * Complex(c);
    }
    return acc;
}

std::string PuiseuxPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Descending exponents.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        std::string coeff;
        bool negative_real = c.is_real() && c.re < 0;
        GaussianRational cp = negative_real ? -c : c;
        bool unit = cp.is_real() && cp.re == 1 && k != 0;
        coeff = unit ? "" : cp.str();
        if (first) {
            if (negative_real) os << "-";
        } else {
            os << (negative_real ? " - " : " + ");
        }
        first = false;
        os << coeff;
        if (k != 0) {
            if (!coeff.empty()) os << "*";
            if (ram_ == 1) {
                os << "z";
                if (k != 1) os << "^" << k;
            } else {
                os << "z^(" << k << "/" << ram_ << ")";
            }
        }
    }
    return os.str();
}

}  // namespace stokes
