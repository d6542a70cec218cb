#pragma once

#include <string>

namespace malsim {

/// 9 significant digits, the dialect used by all estimate CSVs. Infinities
/// print as "inf".
std::string format_g9(double v);

/// Fixed 9 decimal places (street and device coordinates).
std::string format_f9(double v);

}  // namespace malsim
