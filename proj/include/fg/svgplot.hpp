#ifndef FG_SVGPLOT_HPP
#define FG_SVGPLOT_HPP

#include <string>
#include <vector>

#include "fg/harness.hpp"

namespace fg {

// Scatter/line plot of ler_per_round vs ps_rate with a CI band, log y-axis.
std::string curve_to_svg(const std::vector<CurvePoint>& points);

}  // namespace fg

#endif
