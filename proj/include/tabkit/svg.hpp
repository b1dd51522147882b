#pragma once
#include <string>

#include "tabkit/plot.hpp"

namespace tabkit {

// Standalone SVG 1.1 document of spec.width x spec.height with axes, ticks,
// title and the geometry implied by the series. Byte-identical output for
// identical specs.
std::string render_svg(const PlotSpec& spec);

}  // namespace tabkit
