#pragma once

#include <string>
#include <vector>

#include "stokes/formal.hpp"

namespace stokes {

enum class Cond { I, II, ZeroPart };

std::string cond_name(Cond c);

struct IndexCertificate {
    long j = 0;  // 1-based part index
    Cond cond = Cond::ZeroPart;
    Rational C;    // certified bound in (0,1); 0 for zero parts
    Rational R_j;  // radius bound, set for J indices
};

/// Machine-checkable record of the sector selection: on [theta0, theta1]
/// every index satisfies condition (i) or (ii) with its constant, and below
/// radius R every J-index has Re(-Lambda_j) < 0.
struct SectorCertificate {
    Rational theta0_pi;  // sector bounds as exact multiples of pi
    Rational theta1_pi;
    std::vector<IndexCertificate> indices;
    std::vector<long> I;
    std::vector<long> J;
    Rational R;
    Rational R_max = Rational(1);

    Rational amplitude_pi() const { return theta1_pi - theta0_pi; }
    const IndexCertificate& index(long j) const;
};

struct BaseSector {
    Rational theta0_pi, theta1_pi;
    Rational C;
};

/// Base case: a sector where cos(phi - n theta / l) >= 1/2.
BaseSector base_sector(const Angle& phi, long n, long l);

struct Refinement {
    Rational theta0_pi, theta1_pi;
    Cond cond = Cond::I;
    Rational C;
};

/// Shrinks [theta0, theta1] until cos(phi - n theta / l) has a uniform
/// certified sign; deterministic trisection rule.
Refinement refine_sector(const Rational& theta0_pi, const Rational& theta1_pi, const Angle& phi,
                         long n, long l);

Rational compute_radius(const ExponentialPart& part, const Rational& C_j, const Rational& r_max);

SectorCertificate select_sector(const FormalData& fd, const Rational& r_max = Rational(1));

/// Grid re-verification of all certificate conditions; used on emission and
/// by the verify command.
bool verify_certificate(const SectorCertificate& cert, const FormalData& fd, int theta_samples = 1000,
                        std::string* why = nullptr);

/// Re(-Lambda_j) < 0 spot checks below R for the J indices.
bool verify_radius(const SectorCertificate& cert, const FormalData& fd, int samples = 1000,
                   std::string* why = nullptr);

}  // namespace stokes
