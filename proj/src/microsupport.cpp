#include "stokes/microsupport.hpp"

#include <cmath>

#include "stokes/bigfloat.hpp"

namespace stokes {

namespace {

bool in_open_sector(const Rational& x, const Rational& y, const Rational& t0, const Rational& t1,
                    const Rational& R) {
    Region s = Region::sector(t0, t1, R);
    return s.contains_point(x, y);
}

}  // namespace

bool ConicSubset::contains(const CotangentPoint& p) const {
    bool z_zero = p.zx == 0 && p.zy == 0;
    bool c_zero = p.cx == 0 && p.cy == 0;
    if (conormal_origin_ && z_zero) return true;
    if (c_zero) {
        for (const auto& zs : zero_sections_) {
            if (zs.whole_plane) return true;
            if (z_zero) continue;
            if (!in_open_sector(p.zx, p.zy, zs.theta0_pi, zs.theta1_pi, zs.R)) continue;
            if (zs.min_modulus) {
                Rational n2 = p.zx * p.zx + p.zy * p.zy;
                if (!(n2 >= *zs.min_modulus * *zs.min_modulus)) continue;
            }
            return true;
        }
    }
    if (!z_zero && !c_zero) {
        for (const auto& c : circles_) {
            Rational n2 = p.zx * p.zx + p.zy * p.zy;
            if (n2 != c.delta * c.delta) continue;
            if (!in_open_sector(p.zx, p.zy, c.theta0_pi, c.theta1_pi, c.R)) continue;
            // zeta = lambda z with lambda < 0: parallel and opposed
            Rational cross = p.zx * p.cy - p.zy * p.cx;
            Rational dot = p.zx * p.cx + p.zy * p.cy;
            if (cross == 0 && dot < 0) return true;
        }
    }
    return false;
}

ConicSubset ss_Fdelta(const Rational& delta, const SectorCertificate& cert) {
    if (!(delta > 0 && delta < cert.R)) throw DomainError("need 0 < delta < R");
    ConicSubset s;
    ConicSubset::ZeroSectionOver trunc;
    trunc.theta0_pi = cert.theta0_pi;
    trunc.theta1_pi = cert.theta1_pi;
    trunc.R = cert.R;
    trunc.min_modulus = delta;
    s.add_zero_section(std::move(trunc));
    s.add_circle({delta, cert.theta0_pi, cert.theta1_pi, cert.R});
    ConicSubset::ZeroSectionOver whole_sector;
    whole_sector.theta0_pi = cert.theta0_pi;
    whole_sector.theta1_pi = cert.theta1_pi;
    whole_sector.R = cert.R;
    s.add_zero_section(std::move(whole_sector));
    return s;
}

ConicSubset char_variety(const FormalData& fd) {
    (void)fd;  // the standing assumption: singular only at the origin
    ConicSubset s;
    ConicSubset::ZeroSectionOver all;
    all.whole_plane = true;
    s.add_zero_section(std::move(all));
    s.add_conormal_at_origin();
    return s;
}

Witness irregularity_witness(const SectorCertificate& cert, const FormalData& fd,
                             const Rational& r) {
    if (!fd.has_nonzero_part() || cert.I.empty())
        throw NoIrregularityWitness("operator is regular; no witness covector exists");
    if (!(r > 0)) throw DomainError("neighborhood size must be positive");

    Witness w;
    w.delta = std::min(r, cert.R) / 2;

    // Rational point on the circle |z| = delta along a direction near the
    // sector midline: tan-half-angle parametrization keeps |z*| exact.
    Rational mid = (cert.theta0_pi + cert.theta1_pi) / 2;
    // principal representative for the tangent
    Rational mid_principal = mid;
    while (mid_principal > 1) mid_principal -= 2;
    while (mid_principal <= -1) mid_principal += 2;
    if (mid_principal == 1) {
        w.zx = -w.delta;
        w.zy = Rational(0);
    } else {
        double half = mid_principal.convert_to<double>() * 3.141592653589793 / 2.0;
        double t_d = std::tan(half);
        bool placed = false;
        for (long bits = 24; bits <= 48 && !placed; bits += 8) {
            double scaled = std::ldexp(t_d, static_cast<int>(bits));
            Rational t(static_cast<long long>(std::llround(scaled)), static_cast<long long>(1) << bits);
            Rational den = 1 + t * t;
            Rational x = w.delta * (1 - t * t) / den;
            Rational y = w.delta * 2 * t / den;
            Region sector = Region::sector(cert.theta0_pi, cert.theta1_pi, cert.R);
            if (sector.contains_point(x, y)) {
                w.zx = x;
                w.zy = y;
                placed = true;
            }
        }
        if (!placed)
            throw CertificationFailure("could not place a rational witness direction in the sector");
    }

    // |xi*| = r/2 < r with lambda = -r/(2 delta) < 0.
    Rational lambda = -(r / (2 * w.delta));
    w.xix = lambda * w.zx;
    w.xiy = lambda * w.zy;

    // Re-run the predicates the statement quantifies over.
    ConicSubset ss = ss_Fdelta(w.delta, cert);
    ConicSubset ch = char_variety(fd);
    CotangentPoint p = w.point();
    w.in_ss_fdelta = ss.contains(p);
    w.in_char = ch.contains(p);
    w.in_U = (w.zx * w.zx + w.zy * w.zy < r * r) && (w.xix * w.xix + w.xiy * w.xiy < r * r);
    if (!w.in_ss_fdelta || w.in_char || !w.in_U)
        throw CertificationFailure("witness covector failed its predicate checks");
    return w;
}

}  // namespace stokes
