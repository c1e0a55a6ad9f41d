#pragma once

#include <string>

namespace sumset::csv {

/// Shortest-round-trip-safe rendering of a double: 17 significant digits.
std::string number(double x);

}  // namespace sumset::csv
