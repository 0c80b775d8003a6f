#pragma once

#include <string>

namespace qwalk {

// Locale-independent shortest representation at 12 significant digits
// (std::to_chars), so identical runs emit identical bytes.
std::string format_double(double value);

// Angles as raw radians or multiples of pi: "0.25pi", "-pi", "1.5pi", "pi".
// Throws std::invalid_argument on malformed input.
double parse_angle(const std::string& text);

}  // namespace qwalk
