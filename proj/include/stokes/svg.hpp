#pragma once

#include <string>

#include "stokes/json_io.hpp"

namespace stokes {

/// Shaded certified sector with the S_delta ring and per-index growth or
/// decay arrows.
std::string render_sectors_svg(const AnalysisBundle& b);

/// log-magnitude curves against 1/rho, one polyline per column and ray.
std::string render_growth_svg(const AnalysisBundle& b, const CrosscheckReport& rep,
                              const std::vector<RayTrace>& traces);

/// Base projection of the SS(F_delta) components with the witness covector.
std::string render_microsupport_svg(const AnalysisBundle& b);

}  // namespace stokes
