#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stokes/angle.hpp"
#include "stokes/operators.hpp"

namespace stokes {

/// One diagonal exponential Lambda_j = sum_k a_k z^{-k/l}; solutions behave
/// as (moderate factor) * exp(-Lambda_j).
struct ExponentialPart {
    struct Term {
        long k;               // exponent numerator: the term is a * z^{-k/l}
        GaussianRational a;   // nonzero
    };
    long l = 1;
    std::vector<Term> terms;  // ascending k

    bool is_zero() const { return terms.empty(); }
    long n_lead() const { return terms.empty() ? 0 : terms.back().k; }
    const GaussianRational& lead_coeff() const;
    /// Growth order n_lead/l.
    Rational slope() const { return terms.empty() ? Rational(0) : Rational(terms.back().k, l); }

    /// Certified |a_k| for the term with exponent numerator k.
    Interval alpha(long k) const;
    /// arg(-a_k) in [0, 2pi).
    Angle phi(long k) const;
    /// Enclosure of Re(-Lambda(rho e^{i theta})) over a polar box.
    Interval re_minus_lambda(const Interval& rho, const Interval& theta) const;
    /// Point value of Re(-Lambda) at high precision.
    double re_minus_lambda_point(double rho, double theta) const;

    friend bool operator==(const ExponentialPart& x, const ExponentialPart& y);
    std::string str() const;
};

/// Per-term enclosures of a part hoisted out of sampling loops.
struct PartEvaluator {
    struct TermData {
        Rational s;      // k/l
        long k;
        Interval alpha;  // |a_k|
        Interval phi;    // arg(-a_k)
    };
    long l = 1;
    std::vector<TermData> terms;

    explicit PartEvaluator(const ExponentialPart& p);
    /// Enclosure of Re(-Lambda) over a polar box.
    Interval re_minus_lambda(const Interval& rho, const Interval& theta) const;
    /// Enclosure of cos(phi_lead - (n/l) theta).
    Interval lead_cos(const Interval& theta) const;
};

/// Output of the formal reduction: ramification l and the m diagonal parts.
struct FormalData {
    long l = 1;
    std::vector<ExponentialPart> parts;
    std::optional<ScalarOperator> scalar_source;
    std::optional<SystemOperator> system_source;

    long m() const { return static_cast<long>(parts.size()); }
    bool has_nonzero_part() const;
    Rational max_slope() const;
};

/// Slopes and lengths of the Newton polygon: lower hull of (i, v(a_i) - i),
/// slope-0 run first, positive slopes ascending; lengths sum to the order.
std::vector<std::pair<Rational, long>> newton_polygon(const ScalarOperator& op);

/// Build a part from Lambda = sum a * z^{-kappa}; l is derived minimal.
ExponentialPart exponential_part_from_terms(const std::map<Rational, GaussianRational>& lambda);

FormalData exponential_parts(const ScalarOperator& op);
FormalData exponential_parts(const SystemOperator& sys);

struct Classification {
    bool regular;
    std::vector<Rational> positive_slopes;  // distinct, ascending
};

Classification classify_singularity(const FormalData& fd);

}  // namespace stokes
