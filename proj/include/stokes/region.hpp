#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stokes/gaussian.hpp"
#include "stokes/interval.hpp"

namespace stokes {

/// Excluded closed disk |z - center| <= radius.
struct DiskConstraint {
    GaussianRational center;
    Rational radius;
};

/// Relatively compact open subanalytic subset of a sector, built from the
/// closed-form decidable constraint vocabulary.
struct Region {
    Rational theta0_pi;
    Rational theta1_pi;
    Rational R;
    std::vector<Rational> min_modulus;       // |z| > delta
    std::vector<DiskConstraint> outside_disks;

    static Region sector(const Rational& theta0_pi, const Rational& theta1_pi, const Rational& R);
    /// S_delta = {z in S : |z| > delta}.
    Region truncated(const Rational& delta) const;
    /// Intersection with the complement of a closed disk.
    Region minus_disk(const GaussianRational& center, const Rational& radius) const;

    Rational amplitude_pi() const { return theta1_pi - theta0_pi; }
    /// Exact membership for Gaussian-rational points.
    bool contains_point(const Rational& x, const Rational& y) const;
    std::string str() const;
};

/// Sign of arg(x + iy) - q*pi with arg principal in (-pi, pi]; exact.
int compare_arg_with_pi_multiple(const Rational& x, const Rational& y, const Rational& q);

struct InfModulus {
    Rational bound;        // certified lower bound for |z| over V
    bool touches_zero;     // bound == 0 and 0 in the closure
    bool indeterminate = false;
};

InfModulus inf_modulus(const Region& V);

struct ContainsResult {
    bool verified = false;
    bool refuted = false;
    bool closed_form = false;
    long samples_checked = 0;
    std::optional<std::pair<Rational, Rational>> witness;  // exact point in inner \ outer
};

/// Does inner lie inside outer? Refutations carry an exactly verified
/// witness; verification is by closed form for the built-in patterns plus
/// quasi-random sampling.
ContainsResult region_contains(const Region& inner, const Region& outer, long samples = 1000);

struct CofinalPair {
    Rational from;
    Rational to;
    bool closed_form = false;
};

struct CofinalReport {
    bool ok = false;
    std::vector<CofinalPair> forward;
    std::vector<CofinalPair> backward;
    std::string detail;
};

/// Mutual domination of two decreasing region families over a grid.
CofinalReport cofinal_check(const std::function<Region(const Rational&)>& family1,
                            const std::function<Region(const Rational&)>& family2,
                            const std::vector<Rational>& grid, long samples = 1000);

}  // namespace stokes
