#pragma once

#include <cstdio>
#include <string>

namespace polyapprox {

/// printf("%.*g") into a std::string.
inline std::string format_g(double value, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, value);
  return buf;
}

}  // namespace polyapprox
