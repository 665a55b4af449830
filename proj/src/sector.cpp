#include "stokes/sector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stokes {

std::string cond_name(Cond c) {
    switch (c) {
        case Cond::I: return "i";
        case Cond::II: return "ii";
        default: return "zero-part";
    }
}

const IndexCertificate& SectorCertificate::index(long j) const {
    for (const auto& ic : indices)
        if (ic.j == j) return ic;
    throw DomainError("certificate has no index " + std::to_string(j));
}

namespace {

// Round an interval endpoint down to a readable dyadic in (0, 1).
Rational coarse_lower_bound(const Interval& v) {
    static const long grid = 1L << 24;
    Rational lo = v.lo_rational();
    if (lo <= 0) throw CertificationFailure("cannot certify a positive bound");
    Rational scaled = lo * grid;
    BigInt fl = rational_floor(scaled);
    Rational c(fl, grid);
    if (c <= 0) c = lo;  // already tiny: keep the exact dyadic endpoint
    if (c >= 1) c = Rational(grid - 1, grid);
    return c;
}

// cos(phi - s*theta) over theta in [t0, t1] (pi multiples), s = n/l.
Interval cos_over_range(const Angle& phi, const Rational& s, const Rational& t0_pi,
                        const Rational& t1_pi) {
    Interval theta = hull(Interval::pi_times(t0_pi), Interval::pi_times(t1_pi));
    Interval img = phi.enclosure() - theta * Interval(s);
    return cos_i(img);
}

double distance_to_cos_zero(const Interval& img) {
    // zeros of cos at pi/2 + k pi
    double lo = img.lo_double(), hi = img.hi_double();
    const double pi = 3.141592653589793238462643383279502884;
    double a = (lo - pi / 2) / pi, b = (hi - pi / 2) / pi;
    double ka = std::ceil(a), kb = std::floor(b);
    if (ka <= kb) return 0.0;  // a zero inside
    double za = pi / 2 + std::floor(a) * pi;
    double zb = pi / 2 + std::ceil(b) * pi;
    return std::min(lo - za, zb - hi);
}

}  // namespace

BaseSector base_sector(const Angle& phi, long n, long l) {
    if (n < 1 || l < 1) throw DomainError("base_sector requires n, l >= 1");
    BaseSector out;
    out.C = Rational(1, 2);
    Rational theta0_pi, theta_prime1_pi;
    if (phi.is_exact() && phi.pi_mult() == 0) {
        theta0_pi = Rational(0);
        theta_prime1_pi = Rational(l, 4 * n);
    } else {
        // phi_hat: exact pi-multiple upper bound for phi (equal when exact).
        Rational phi_hat;
        if (phi.is_exact()) {
            phi_hat = phi.pi_mult();
        } else {
            static const long grid = 1L << 32;
            Interval q = phi.enclosure() / Interval::pi();
            Rational hi = q.hi_rational() * grid;
            phi_hat = Rational(rational_floor(hi) + 1, grid);
        }
        Rational ln(l, n);
        theta0_pi = std::max(Rational(0), ln * (phi_hat - Rational(1, 4)));
        theta_prime1_pi = ln * phi_hat;
    }
    // Strict shrink plus the amplitude cap below 2(k+1)pi.
    Rational theta1_pi = theta0_pi + Rational(99, 100) * (theta_prime1_pi - theta0_pi);
    BigInt k = rational_floor(theta0_pi / 2);
    Rational cap = Rational(2) * Rational(k + 1);
    if (theta1_pi >= cap) theta1_pi = theta0_pi + Rational(99, 100) * (cap - theta0_pi);
    out.theta0_pi = theta0_pi;
    out.theta1_pi = theta1_pi;

    Interval c = cos_over_range(phi, Rational(n, l), out.theta0_pi, out.theta1_pi);
    if (!(c.lo_rational() >= out.C))
        throw CertificationFailure("base sector failed its own interval check");
    return out;
}

Refinement refine_sector(const Rational& theta0_pi, const Rational& theta1_pi, const Angle& phi,
                         long n, long l) {
    if (theta1_pi <= theta0_pi) throw DomainError("empty sector range");
    Rational s(n, l);
    Rational t0 = theta0_pi, t1 = theta1_pi;
    for (int depth = 0; depth < 200; ++depth) {
        Interval c = cos_over_range(phi, s, t0, t1);
        if (c.is_strictly_positive()) {
            Refinement r;
            r.theta0_pi = t0;
            r.theta1_pi = t1;
            r.cond = Cond::I;
            r.C = coarse_lower_bound(c);
            return r;
        }
        if (c.is_strictly_negative()) {
            Refinement r;
            r.theta0_pi = t0;
            r.theta1_pi = t1;
            r.cond = Cond::II;
            r.C = coarse_lower_bound(-c);
            return r;
        }
        // Trisect; keep the third whose cos-image sits farthest from a zero
        // of cosine. g is affine with nonzero slope, so this terminates.
        Rational w = (t1 - t0) / 3;
        double best = -1;
        Rational b0 = t0, b1 = t1;
        for (int part = 0; part < 3; ++part) {
            Rational u0 = t0 + w * part;
            Rational u1 = (part == 2) ? t1 : t0 + w * (part + 1);
            Interval theta = hull(Interval::pi_times(u0), Interval::pi_times(u1));
            Interval img = phi.enclosure() - theta * Interval(s);
            double d = distance_to_cos_zero(img);
            if (d > best) {
                best = d;
                b0 = u0;
                b1 = u1;
            }
        }
        t0 = b0;
        t1 = b1;
    }
    throw CertificationFailure("refine_sector failed to separate signs (depth bound)");
}

Rational compute_radius(const ExponentialPart& part, const Rational& C_j, const Rational& r_max) {
    if (part.is_zero()) return r_max;
    long n = part.n_lead();
    Rational T(0);
    for (const auto& t : part.terms) {
        if (t.k == n) continue;
        T += part.alpha(t.k).hi_rational();
    }
    if (T == 0) return r_max;
    Rational alpha_lo = part.alpha(n).lo_rational();
    if (alpha_lo <= 0) throw CertificationFailure("leading alpha lower bound is not positive");
    Rational base = alpha_lo * C_j / T;
    Rational rj = pow_rational(base, part.l);
    return std::min({Rational(1), rj, r_max});
}

SectorCertificate select_sector(const FormalData& fd, const Rational& r_max) {
    if (!fd.has_nonzero_part())
        throw DomainError("select_sector requires an irregular operator (classify first)");
    if (r_max <= 0) throw DomainError("working radius must be positive");

    SectorCertificate cert;
    cert.R_max = r_max;
    cert.indices.resize(fd.parts.size());

    // Base case on the first nonzero part; it always lands condition (i),
    // so I is never empty.
    long first = -1;
    for (long j = 0; j < fd.m(); ++j)
        if (!fd.parts[static_cast<std::size_t>(j)].is_zero()) {
            first = j;
            break;
        }
    const ExponentialPart& p0 = fd.parts[static_cast<std::size_t>(first)];
    BaseSector base = base_sector(p0.phi(p0.n_lead()), p0.n_lead(), p0.l);
    cert.theta0_pi = base.theta0_pi;
    cert.theta1_pi = base.theta1_pi;
    cert.indices[static_cast<std::size_t>(first)] = {first + 1, Cond::I, base.C, Rational(0)};

    for (long j = 0; j < fd.m(); ++j) {
        if (j == first) continue;
        const ExponentialPart& p = fd.parts[static_cast<std::size_t>(j)];
        auto& ic = cert.indices[static_cast<std::size_t>(j)];
        ic.j = j + 1;
        if (p.is_zero()) {
            ic.cond = Cond::ZeroPart;
            ic.C = Rational(0);
            continue;
        }
        Refinement r = refine_sector(cert.theta0_pi, cert.theta1_pi, p.phi(p.n_lead()),
                                     p.n_lead(), p.l);
        cert.theta0_pi = r.theta0_pi;
        cert.theta1_pi = r.theta1_pi;
        ic.cond = r.cond;
        ic.C = r.C;
    }

    // Index partition and radius.
    cert.R = r_max;
    for (long j = 0; j < fd.m(); ++j) {
        auto& ic = cert.indices[static_cast<std::size_t>(j)];
        if (ic.cond == Cond::I) {
            cert.I.push_back(j + 1);
        } else {
            cert.J.push_back(j + 1);
            const ExponentialPart& p = fd.parts[static_cast<std::size_t>(j)];
            ic.R_j = compute_radius(p, ic.C, r_max);
            cert.R = std::min(cert.R, ic.R_j);
        }
    }

    std::string why;
    if (!verify_certificate(cert, fd, 1000, &why))
        throw CertificationFailure("emitted certificate failed verification: " + why);
    return cert;
}

bool verify_certificate(const SectorCertificate& cert, const FormalData& fd, int theta_samples,
                        std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    Rational amp = cert.amplitude_pi();
    if (!(amp > 0 && amp < 2)) return fail("amplitude out of (0, 2pi)");
    if (fd.has_nonzero_part() && cert.I.empty()) return fail("I is empty");
    if (static_cast<long>(cert.indices.size()) != fd.m()) return fail("index count mismatch");
    if (!(cert.R > 0 && cert.R <= cert.R_max)) return fail("R out of range");

    for (long j = 0; j < fd.m(); ++j) {
        const auto& ic = cert.indices[static_cast<std::size_t>(j)];
        const ExponentialPart& p = fd.parts[static_cast<std::size_t>(j)];
        if (ic.j != j + 1) return fail("index numbering broken");
        if (p.is_zero()) {
            if (ic.cond != Cond::ZeroPart) return fail("zero part with sign condition");
            continue;
        }
        if (ic.cond == Cond::ZeroPart) return fail("nonzero part flagged zero");
        if (!(ic.C > 0 && ic.C < 1)) return fail("constant C out of (0,1)");
        PartEvaluator ev(p);
        Interval pi = Interval::pi();
        Interval Ci(ic.C);
        for (int t = 0; t <= theta_samples; ++t) {
            Rational th = cert.theta0_pi + amp * Rational(t, theta_samples);
            Interval c = ev.lead_cos(pi * Interval(th));
            if (ic.cond == Cond::I) {
                if (!(c - Ci).is_strictly_positive() && !(c.lo_rational() >= ic.C))
                    return fail("condition (i) fails at sample " + std::to_string(t) +
                                " for index " + std::to_string(ic.j));
            } else {
                if (!(-c - Ci).is_strictly_positive() && !(c.hi_rational() <= -ic.C))
                    return fail("condition (ii) fails at sample " + std::to_string(t) +
                                " for index " + std::to_string(ic.j));
            }
        }
    }
    return true;
}

bool verify_radius(const SectorCertificate& cert, const FormalData& fd, int samples,
                   std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    int per_axis = std::max(4, static_cast<int>(std::sqrt(static_cast<double>(samples) / 2)));
    Interval pi = Interval::pi();
    std::vector<Interval> thetas;
    for (int b = 0; b <= per_axis; ++b)
        thetas.push_back(pi * Interval(cert.theta0_pi + cert.amplitude_pi() * Rational(b, per_axis)));
    for (long j : cert.J) {
        const ExponentialPart& p = fd.parts[static_cast<std::size_t>(j - 1)];
        if (p.is_zero()) continue;
        PartEvaluator ev(p);
        for (int a = 1; a <= per_axis; ++a) {
            // one linear and one geometric ladder of depths below R
            Rational rho_lin = cert.R * Rational(a, per_axis + 1);
            Rational rho_geo = cert.R * pow_rational(Rational(1, 2), a);
            for (const Rational& rho : {rho_lin, rho_geo}) {
                if (rho <= 0) continue;
                Interval rho_i(rho);
                for (int b = 0; b <= per_axis; ++b) {
                    Interval v = ev.re_minus_lambda(rho_i, thetas[static_cast<std::size_t>(b)]);
                    if (!v.is_strictly_negative())
                        return fail("Re(-Lambda_" + std::to_string(j) + ") not negative at rho=" +
                                    to_string(rho) + ", theta sample " + std::to_string(b));
                }
            }
        }
    }
    return true;
}

}  // namespace stokes
