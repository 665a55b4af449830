#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "stokes/microsupport.hpp"
#include "stokes/oracle.hpp"
#include "stokes/temperance.hpp"

namespace stokes {

using ordered_json = nlohmann::ordered_json;

/// End-to-end analysis record: the certificate, presentation and witness are
/// present exactly when the classification is irregular.
struct AnalysisBundle {
    std::string operator_text;  // canonical printed form (scalar input)
    std::optional<SystemOperator> system;
    FormalData formal;
    Classification classification;
    std::vector<std::pair<Rational, long>> polygon;  // scalar input only
    std::optional<SectorCertificate> certificate;
    std::optional<FiltrantPresentation> presentation;
    std::optional<Witness> witness;
};

AnalysisBundle analyze_operator(const ScalarOperator& op, const Rational& r_max = Rational(1),
                                const Rational& witness_r = Rational(1, 2));
AnalysisBundle analyze_system(const SystemOperator& sys, const Rational& r_max = Rational(1),
                              const Rational& witness_r = Rational(1, 2));

ordered_json formal_to_json(const FormalData& fd);
FormalData formal_from_json(const ordered_json& j);

ordered_json certificate_to_json(const SectorCertificate& cert);
SectorCertificate certificate_from_json(const ordered_json& j);

ordered_json region_to_json(const Region& v);
Region region_from_json(const ordered_json& j);

ordered_json witness_to_json(const Witness& w);
Witness witness_from_json(const ordered_json& j);

ordered_json report_to_json(const CrosscheckReport& rep);

ordered_json bundle_to_json(const AnalysisBundle& b);

std::string bundle_to_text(const AnalysisBundle& b);

/// System matrix file: { "N": int, "A": [[poly, ...], ...] }.
SystemOperator system_from_json(const ordered_json& j);

/// Reload a bundle and re-run every check it claims; returns a list of
/// human-readable lines and sets ok accordingly.
struct VerifyOutcome {
    bool ok = false;
    std::vector<std::string> lines;
};
VerifyOutcome verify_bundle(const ordered_json& j);

}  // namespace stokes
