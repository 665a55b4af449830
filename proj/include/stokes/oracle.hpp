#pragma once

#include <string>
#include <vector>

#include "stokes/formal.hpp"
#include "stokes/sector.hpp"

namespace stokes {

/// Renormalized fundamental-matrix propagation along z = rho e^{i theta}.
struct RayTrace {
    double theta = 0;
    long m = 0;
    struct Sample {
        double rho;
        std::vector<double> log_norm;  // accumulated log of column magnitude
    };
    std::vector<Sample> samples;  // rho strictly decreasing
    double rho_reached = 0;

    // Final state, for composition tests: renormalized columns and their
    // accumulated log factors.
    std::vector<std::vector<Complex>> final_matrix;
    std::vector<Real> final_logfac;
};

/// Adaptive Taylor-series propagation of dw/dz = -z^{-N} A(z) w from rho_hi
/// to rho_lo (either direction) with per-step column renormalization; local
/// truncation error per step is kept at or below tol.
RayTrace integrate_ray(const SystemOperator& sys, double theta, double rho_hi, double rho_lo,
                       double tol, long precision_digits);

struct GrowthFit {
    double exponent = 0;     // n_hat / l estimate
    double coefficient = 0;  // c_hat with meaningful sign
    double residual = 0;
    bool degenerate = false;  // bounded or logarithmic growth: regular signal
};

/// Per-column growth fit: log-log slope over the deepest decade, refined by
/// a small grid fit of c rho^{-n} plus logarithmic lower order.
std::vector<GrowthFit> fit_growth(const RayTrace& trace, long l);

struct RayCheck {
    double theta = 0;
    bool pass = false;
    std::vector<GrowthFit> fits;
    double expected_exponent = 0;
    double expected_sign = 0;
    std::string note;
};

struct CrosscheckReport {
    bool pass = false;
    std::vector<RayCheck> rays;
    double tol = 0;
    long precision_digits = 0;
    double rho_hi = 0, rho_lo = 0;
};

/// Oracle-vs-symbolic comparison along the given ray directions (radians).
/// cert may be null for regular operators.
CrosscheckReport crosscheck(const FormalData& fd, const SectorCertificate* cert,
                            const std::vector<double>& rays, double tol = 1e-10,
                            long precision_digits = 50);

/// Default interior ray directions for a certificate (or a regular spread).
std::vector<double> default_rays(const SectorCertificate* cert, int count);

}  // namespace stokes
