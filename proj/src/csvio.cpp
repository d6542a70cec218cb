#include "malsim/csvio.hpp"

#include <cmath>
#include <cstdio>

namespace malsim {

std::string format_g9(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string format_f9(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

}  // namespace malsim
