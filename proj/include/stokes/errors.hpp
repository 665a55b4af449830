#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stokes {

struct SyntaxError : std::runtime_error {
    std::size_t offset;
    SyntaxError(const std::string& what, std::size_t byte_offset)
        : std::runtime_error(what + " (at byte " + std::to_string(byte_offset) + ")"),
          offset(byte_offset) {}
};

struct ZeroLeadingCoefficient : std::runtime_error {
    ZeroLeadingCoefficient() : std::runtime_error("leading coefficient vanishes after simplification") {}
};

struct NonLaurentQuotient : std::runtime_error {
    explicit NonLaurentQuotient(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedOperator : std::runtime_error {
    explicit UnsupportedOperator(const std::string& reason) : std::runtime_error(reason) {}
};

struct CertificationFailure : std::runtime_error {
    explicit CertificationFailure(const std::string& what) : std::runtime_error(what) {}
};

struct BranchAmbiguity : std::runtime_error {
    explicit BranchAmbiguity(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct RegionOutsideSector : std::runtime_error {
    explicit RegionOutsideSector(const std::string& what) : std::runtime_error(what) {}
};

struct NoIrregularityWitness : std::runtime_error {
    explicit NoIrregularityWitness(const std::string& what) : std::runtime_error(what) {}
};

struct StepSizeUnderflow : std::runtime_error {
    double deepest_rho;
    StepSizeUnderflow(const std::string& what, double rho)
        : std::runtime_error(what), deepest_rho(rho) {}
};

struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stokes
