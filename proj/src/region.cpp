#include "stokes/region.hpp"

#include <cmath>
#include <sstream>

#include "stokes/bigfloat.hpp"

namespace stokes {

Region Region::sector(const Rational& theta0_pi, const Rational& theta1_pi, const Rational& R) {
    if (!(theta1_pi > theta0_pi)) throw DomainError("sector needs theta1 > theta0");
    if (!(R > 0)) throw DomainError("sector needs positive radius");
    Region v;
    v.theta0_pi = theta0_pi;
    v.theta1_pi = theta1_pi;
    v.R = R;
    return v;
}

Region Region::truncated(const Rational& delta) const {
    if (!(delta > 0 && delta < R)) throw DomainError("truncation level must lie in (0, R)");
    Region v = *this;
    v.min_modulus.push_back(delta);
    return v;
}

Region Region::minus_disk(const GaussianRational& center, const Rational& radius) const {
    if (!(radius > 0)) throw DomainError("excluded disk needs positive radius");
    Region v = *this;
    v.outside_disks.push_back({center, radius});
    return v;
}

int compare_arg_with_pi_multiple(const Rational& x, const Rational& y, const Rational& q) {
    if (x == 0 && y == 0) throw DomainError("argument of zero point");
    if (q > 1) return -1;
    if (q < -1) return 1;
    if (q == -1) return 1;  // principal arg > -pi

    // Exact handling of the quarter-grid angles (the only pi-multiples an
    // exact Gaussian direction can hit).
    long qd = static_cast<long>(denominator(q));
    auto exact_equal = [&]() -> bool {
        if (qd == 1) {
            if (q == 0) return y == 0 && x > 0;
            return y == 0 && x < 0;  // q == 1
        }
        if (qd == 2) return x == 0 && ((q > 0) ? y > 0 : y < 0);
        if (qd == 4) {
            if (rational_abs(x) != rational_abs(y) || x == 0) return false;
            if (q == Rational(1, 4)) return x > 0 && y > 0;
            if (q == Rational(3, 4)) return x < 0 && y > 0;
            if (q == Rational(-1, 4)) return x > 0 && y < 0;
            if (q == Rational(-3, 4)) return x < 0 && y < 0;
            return false;
        }
        return false;  // Niven: other multiples are unreachable
    };
    if ((qd == 1 || qd == 2 || qd == 4) && exact_equal()) return 0;

    long bits = working_precision_bits();
    for (int attempt = 0; attempt < 8; ++attempt) {
        ScopedPrecision prec(bits);
        Interval d = Interval::atan2_exact(y, x) - Interval::pi_times(q);
        if (d.is_strictly_positive()) return 1;
        if (d.is_strictly_negative()) return -1;
        bits *= 2;
    }
    throw CertificationFailure("cannot separate argument from sector boundary");
}

bool Region::contains_point(const Rational& x, const Rational& y) const {
    Rational n2 = x * x + y * y;
    if (n2 == 0) return false;
    if (!(n2 < R * R)) return false;
    for (const auto& d : min_modulus)
        if (!(n2 > d * d)) return false;
    for (const auto& disk : outside_disks) {
        Rational dx = x - disk.center.re, dy = y - disk.center.im;
        if (!(dx * dx + dy * dy > disk.radius * disk.radius)) return false;
    }
    // theta0 < arg + 2k < theta1 for some integer k
    BigInt k_lo = rational_floor(theta0_pi / 2) - 1;
    BigInt k_hi = rational_floor(theta1_pi / 2) + 1;
    for (BigInt k = k_lo; k <= k_hi; ++k) {
        Rational a = theta0_pi - 2 * Rational(k);
        Rational b = theta1_pi - 2 * Rational(k);
        if (a >= 1 || b <= -1) continue;
        if (compare_arg_with_pi_multiple(x, y, a) > 0 && compare_arg_with_pi_multiple(x, y, b) < 0)
            return true;
    }
    return false;
}

std::string Region::str() const {
    std::ostringstream os;
    os << "S(" << to_string(theta0_pi) << "pi, " << to_string(theta1_pi) << "pi, " << to_string(R)
       << ")";
    for (const auto& d : min_modulus) os << " & |z|>" << to_string(d);
    for (const auto& d : outside_disks)
        os << " & |z-" << d.center.str() << "|>" << to_string(d.radius);
    return os.str();
}

InfModulus inf_modulus(const Region& V) {
    InfModulus out{Rational(0), true, false};
    for (const auto& d : V.min_modulus) {
        out.bound = std::max(out.bound, d);
        out.touches_zero = false;
    }
    int tangent_touchers = 0;
    for (const auto& disk : V.outside_disks) {
        Rational c2 = disk.center.norm2();
        Rational r2 = disk.radius * disk.radius;
        if (c2 > r2) continue;  // origin outside the disk: no separation, no effect near 0
        if (c2 < r2) {
            // origin interior: |z| > r - |c|
            Interval cm = sqrt_i(Interval(c2));
            Rational lb = disk.radius - cm.hi_rational();
            if (lb > 0) {
                out.bound = std::max(out.bound, lb);
                out.touches_zero = false;
            }
            continue;
        }
        // tangent at the origin
        if (disk.center.im == 0 && disk.center.re > 0 && V.theta0_pi >= 0 &&
            V.theta1_pi <= Rational(1, 4)) {
            // the x > y > 0 computation: outside the disk forces x > eps
            out.bound = std::max(out.bound, disk.center.re);
            out.touches_zero = false;
            continue;
        }
        // General tangent disk: the region escapes to 0 along directions with
        // Re(e^{i theta} conj(c)) <= 0; otherwise 2 Re(e^{i theta} conj(c))
        // bounds |z| from below.
        Interval theta = hull(Interval::pi_times(V.theta0_pi), Interval::pi_times(V.theta1_pi));
        Interval re_part = Interval(disk.center.re) * cos_i(theta) + Interval(disk.center.im) * sin_i(theta);
        if (re_part.is_strictly_positive()) {
            Rational lb = 2 * re_part.lo_rational();
            out.bound = std::max(out.bound, lb);
            out.touches_zero = false;
        } else {
            ++tangent_touchers;
        }
    }
    if (out.bound > 0) {
        out.touches_zero = false;
        return out;
    }
    // With several tangent disks the escape arcs may fail to overlap; that
    // configuration is outside the closed-form vocabulary.
    if (tangent_touchers > 1) out.indeterminate = true;
    return out;
}

// ---------------------------------------------------------------------------
// Containment
// ---------------------------------------------------------------------------

namespace {

bool same_sector(const Region& a, const Region& b) {
    return a.theta0_pi == b.theta0_pi && a.theta1_pi == b.theta1_pi && a.R == b.R;
}

bool is_plain_truncation(const Region& v) { return v.outside_disks.empty(); }

Rational truncation_level(const Region& v) {
    Rational d(0);
    for (const auto& m : v.min_modulus) d = std::max(d, m);
    return d;
}

// U_eps pattern: one tangent disk with real center eps = radius.
std::optional<Rational> tangent_disk_level(const Region& v) {
    if (!v.min_modulus.empty() || v.outside_disks.size() != 1) return std::nullopt;
    const auto& d = v.outside_disks[0];
    if (d.center.im == 0 && d.center.re > 0 && d.center.re == d.radius) return d.radius;
    return std::nullopt;
}

double halton(long index, long base) {
    double f = 1.0, r = 0.0;
    for (long i = index; i > 0; i /= base) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
    }
    return r;
}

Rational dyadic(double v, long bits = 40) {
    double scaled = std::ldexp(v, static_cast<int>(bits));
    if (!std::isfinite(scaled)) throw DomainError("non-finite sample coordinate");
    return Rational(static_cast<long long>(std::llround(scaled)), static_cast<long long>(1) << bits);
}

}  // namespace

ContainsResult region_contains(const Region& inner, const Region& outer, long samples) {
    ContainsResult res;

    // Closed forms for the truncation and ball-complement inclusions, valid
    // inside the x > y > 0 quarter sector.
    bool xy_sector = inner.theta0_pi >= 0 && inner.theta1_pi <= Rational(1, 4);
    if (same_sector(inner, outer)) {
        auto eps_outer = tangent_disk_level(outer);
        auto eps_inner = tangent_disk_level(inner);
        if (is_plain_truncation(inner) && eps_outer && xy_sector) {
            // S_delta subset U_eps cap S whenever eps <= delta/4:
            // x^2+y^2 > x^2 >= 2x(delta/4) >= 2x eps.
            Rational delta = truncation_level(inner);
            if (delta > 0 && *eps_outer <= delta / 4) {
                res.verified = true;
                res.closed_form = true;
            }
        } else if (eps_inner && is_plain_truncation(outer) && xy_sector) {
            // U_eps cap S subset S_delta for delta <= eps: x > eps there.
            Rational delta = truncation_level(outer);
            if (delta <= *eps_inner) {
                res.verified = true;
                res.closed_form = true;
            }
        } else if (is_plain_truncation(inner) && is_plain_truncation(outer)) {
            Rational di = truncation_level(inner), dout = truncation_level(outer);
            if (dout <= di) {
                res.verified = true;
                res.closed_form = true;
            }
        }
    }

    // Quasi-random exact-point sampling: sound refutation, probabilistic
    // verification.
    double th0 = inner.theta0_pi.convert_to<double>() * 3.141592653589793;
    double th1 = inner.theta1_pi.convert_to<double>() * 3.141592653589793;
    double rmax = inner.R.convert_to<double>();
    long accepted = 0;
    for (long i = 1; accepted < samples && i < samples * 40; ++i) {
        double u = halton(i, 2), v = halton(i, 3);
        // bias toward small radii: square the uniform draw
        double rho = rmax * (0.0005 + 0.9995 * u * u);
        double th = th0 + (th1 - th0) * v;
        Rational x = dyadic(rho * std::cos(th));
        Rational y = dyadic(rho * std::sin(th));
        if (!inner.contains_point(x, y)) continue;
        ++accepted;
        if (!outer.contains_point(x, y)) {
            res.refuted = true;
            res.verified = false;
            res.witness = std::make_pair(x, y);
            res.samples_checked = accepted;
            return res;
        }
    }
    res.samples_checked = accepted;
    if (!res.refuted && accepted >= std::min(samples, 100L)) {
        if (!res.closed_form) res.verified = true;
    }
    return res;
}

CofinalReport cofinal_check(const std::function<Region(const Rational&)>& family1,
                            const std::function<Region(const Rational&)>& family2,
                            const std::vector<Rational>& grid, long samples) {
    CofinalReport rep;
    rep.ok = true;
    auto dominate = [&](const std::function<Region(const Rational&)>& from,
                        const std::function<Region(const Rational&)>& to, const Rational& idx,
                        std::vector<CofinalPair>& out) {
        Region a = from(idx);
        std::vector<Rational> candidates;
        candidates.push_back(idx / 4);
        candidates.push_back(idx);
        candidates.push_back(idx * idx);
        for (const auto& g : grid) {
            candidates.push_back(g);
            candidates.push_back(g * g);
        }
        for (const auto& c : candidates) {
            if (!(c > 0)) continue;
            Region b;
            try {
                b = to(c);
            } catch (const DomainError&) {
                continue;
            }
            ContainsResult r = region_contains(a, b, samples);
            if (r.verified && !r.refuted) {
                out.push_back({idx, c, r.closed_form});
                return true;
            }
        }
        rep.detail = "no dominating index found for " + to_string(idx);
        return false;
    };
    for (const auto& d : grid)
        if (!dominate(family1, family2, d, rep.forward)) rep.ok = false;
    for (const auto& e : grid)
        if (!dominate(family2, family1, e, rep.backward)) rep.ok = false;
    return rep;
}

}  // namespace stokes
