#include "stokes/temperance.hpp"

#include <sstream>

namespace stokes {

namespace {

Rational dyadic_upper(const Interval& v) {
    static const long grid = 1L << 24;
    Rational hi = v.hi_rational() * grid;
    return Rational(rational_floor(hi) + 1, grid);
}

}  // namespace

TemperanceVerdict is_tempered_exp(const ExponentialPart& part, const Region& V,
                                  const SectorCertificate& cert) {
    TemperanceVerdict out;
    if (part.is_zero()) {
        out.kind = TemperanceVerdict::Kind::Tempered;
        out.bound_A = Rational(0);
        return out;
    }
    if (!(V.R <= cert.R_max))
        throw RegionOutsideSector("region radius exceeds the certified working radius");

    PartEvaluator ev(part);
    Interval theta_range =
        hull(Interval::pi_times(V.theta0_pi), Interval::pi_times(V.theta1_pi));
    Interval lead = ev.lead_cos(theta_range);

    InfModulus inf = inf_modulus(V);
    if (inf.indeterminate) {
        out.kind = TemperanceVerdict::Kind::Indeterminate;
        out.reason = "region is outside the closed-form vocabulary";
        return out;
    }

    if (lead.is_strictly_positive()) {
        // Growth direction band: tempered exactly when V avoids the origin.
        if (inf.touches_zero) {
            out.kind = TemperanceVerdict::Kind::NotTempered;
            out.direction_pi = (V.theta0_pi + V.theta1_pi) / 2;
            return out;
        }
        Interval rho(std::min(inf.bound, V.R), V.R);
        out.kind = TemperanceVerdict::Kind::Tempered;
        out.bound_A = dyadic_upper(ev.re_minus_lambda(rho, theta_range));
        return out;
    }
    if (lead.is_strictly_negative()) {
        // Decay band. Below the radius bound derived from this range's own
        // constant, Re(-Lambda) < 0; past it, compactness gives the bound.
        Rational c_here = (-lead).lo_rational();
        if (c_here >= 1) c_here = Rational((1L << 24) - 1, 1L << 24);
        Rational rj = compute_radius(part, c_here, cert.R_max);
        if (V.R <= rj && inf.touches_zero) {
            out.kind = TemperanceVerdict::Kind::Tempered;
            out.bound_A = Rational(0);
            return out;
        }
        Rational lo = inf.touches_zero ? std::min(rj, V.R) : std::min(inf.bound, V.R);
        Interval rho(lo, V.R);
        Interval sup = ev.re_minus_lambda(rho, theta_range);
        Rational bound = dyadic_upper(sup);
        if (inf.touches_zero && bound < 0) bound = Rational(0);
        out.kind = TemperanceVerdict::Kind::Tempered;
        out.bound_A = bound;
        return out;
    }
    throw RegionOutsideSector(
        "the leading cosine changes sign over the region's angular range; no certificate applies");
}

TemperedCount tempered_count(const FormalData& fd, const SectorCertificate& cert, const Region& V) {
    if (!(V.R <= cert.R))
        throw RegionOutsideSector("tempered_count requires region radius <= certified R");
    TemperedCount out;
    for (long j = 1; j <= fd.m(); ++j) {
        TemperanceVerdict v = is_tempered_exp(fd.parts[static_cast<std::size_t>(j - 1)], V, cert);
        if (v.kind == TemperanceVerdict::Kind::Indeterminate)
            throw RegionOutsideSector("indeterminate temperance verdict: " + v.reason);
        if (v.tempered()) out.J_V.push_back(j);
    }
    out.n = static_cast<long>(out.J_V.size());
    return out;
}

std::string FiltrantPresentation::family() const {
    std::ostringstream os;
    if (n > 0) {
        os << "C";
        if (n > 1) os << "^" << n;
        os << "_{S_delta}";
    }
    if (m - n > 0) {
        if (n > 0) os << " (+) ";
        os << "C";
        if (m - n > 1) os << "^" << (m - n);
        os << "_S";
    }
    os << ", delta in (0, " << to_string(R) << ")";
    return os.str();
}

long FiltrantPresentation::sections_over(const Region& V) const {
    InfModulus inf = inf_modulus(V);
    if (inf.indeterminate) throw RegionOutsideSector("region outside closed-form vocabulary");
    bool inside_some_truncation = !inf.touches_zero;
    return (inside_some_truncation ? n : 0) + (m - n);
}

FiltrantPresentation filtrant_presentation(const FormalData& fd, const SectorCertificate& cert) {
    if (!fd.has_nonzero_part())
        throw DomainError("filtrant presentation requires an irregular operator");
    FiltrantPresentation fp;
    fp.m = fd.m();
    fp.n = static_cast<long>(cert.I.size());
    fp.theta0_pi = cert.theta0_pi;
    fp.theta1_pi = cert.theta1_pi;
    fp.R = cert.R;
    return fp;
}

}  // namespace stokes
