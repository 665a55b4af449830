#pragma once

#include <optional>

#include "stokes/region.hpp"
#include "stokes/sector.hpp"

namespace stokes {

struct TemperanceVerdict {
    enum class Kind { Tempered, NotTempered, Indeterminate };
    Kind kind = Kind::Indeterminate;
    std::optional<Rational> bound_A;        // Tempered: certified upper bound for Re(-Lambda)
    std::optional<Rational> direction_pi;   // NotTempered: blow-up direction theta*
    std::string reason;

    bool tempered() const { return kind == Kind::Tempered; }
};

/// Boundedness decision for exp(-Lambda_j) on V: real part bounded from
/// above, or a certified blow-up direction. V's angular range is certified
/// directly, so it may exceed the stored certificate range as long as the
/// sign conditions still hold there.
TemperanceVerdict is_tempered_exp(const ExponentialPart& part, const Region& V,
                                  const SectorCertificate& cert);

struct TemperedCount {
    long n = 0;
    std::vector<long> J_V;  // 1-based tempered indices
};

TemperedCount tempered_count(const FormalData& fd, const SectorCertificate& cert, const Region& V);

/// The filtrant family C^n_{S_delta} (+) C^{m-n}_S for delta in (0, R).
struct FiltrantPresentation {
    long m = 0;
    long n = 0;
    Rational theta0_pi, theta1_pi, R;
    std::string family() const;
    /// Section dimension the presentation assigns to a region.
    long sections_over(const Region& V) const;
};

FiltrantPresentation filtrant_presentation(const FormalData& fd, const SectorCertificate& cert);

}  // namespace stokes
