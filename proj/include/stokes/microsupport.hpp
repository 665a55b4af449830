#pragma once

#include <optional>
#include <vector>

#include "stokes/region.hpp"
#include "stokes/sector.hpp"

namespace stokes {

/// Point of T*C with exact coordinates: base z and covector zeta.
struct CotangentPoint {
    Rational zx, zy;
    Rational cx, cy;
};

/// R+-conic subset of the cotangent space assembled from the component
/// kinds that arise for constant sheaves on truncated sectors. Membership
/// is exact.
class ConicSubset {
  public:
    struct ZeroSectionOver {
        bool whole_plane = false;
        // otherwise: base sector with optional closed |z| >= delta constraint
        Rational theta0_pi, theta1_pi, R;
        std::optional<Rational> min_modulus;
    };
    struct OutwardNormalCircle {
        Rational delta;
        Rational theta0_pi, theta1_pi, R;
    };

    void add_zero_section(ZeroSectionOver c) { zero_sections_.push_back(std::move(c)); }
    void add_circle(OutwardNormalCircle c) { circles_.push_back(std::move(c)); }
    void add_conormal_at_origin() { conormal_origin_ = true; }

    bool contains(const CotangentPoint& p) const;

    const std::vector<ZeroSectionOver>& zero_sections() const { return zero_sections_; }
    const std::vector<OutwardNormalCircle>& circles() const { return circles_; }
    bool has_conormal_at_origin() const { return conormal_origin_; }

  private:
    std::vector<ZeroSectionOver> zero_sections_;
    std::vector<OutwardNormalCircle> circles_;
    bool conormal_origin_ = false;
};

/// SS(F_delta) = {zero section over S_delta-closure} + outward normal circle
/// at |z| = delta + zero section over S, exactly as displayed.
ConicSubset ss_Fdelta(const Rational& delta, const SectorCertificate& cert);

/// Char(M) for an operator singular only at 0: zero section + conormal at 0.
ConicSubset char_variety(const FormalData& fd);

struct Witness {
    Rational delta;
    Rational zx, zy;
    Rational xix, xiy;
    bool in_ss_fdelta = false;
    bool in_char = true;
    bool in_U = false;
    CotangentPoint point() const { return {zx, zy, xix, xiy}; }
};

/// The covector (z*; -lambda z*) with |z*| = delta that lies in SS(F_delta)
/// but outside Char(M), inside the box neighborhood {|z|<r} x {|zeta|<r}.
Witness irregularity_witness(const SectorCertificate& cert, const FormalData& fd, const Rational& r);

}  // namespace stokes
