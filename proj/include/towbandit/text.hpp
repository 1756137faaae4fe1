#pragma once

#include <string>

namespace towbandit::text {

/// Locale-independent decimal rendering with 15 significant digits, the
/// precision used for probabilities in CSV output.
std::string format_double(double value);

/// Locale-independent fixed-point rendering, for SVG geometry.
std::string format_fixed(double value, int precision);

}  // namespace towbandit::text
