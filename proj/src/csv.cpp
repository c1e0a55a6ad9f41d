#include "sumset/csv.hpp"

#include <fmt/format.h>

namespace sumset::csv {

std::string number(double x) { return fmt::format("{:.17g}", x); }

}  // namespace sumset::csv
