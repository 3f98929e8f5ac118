#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

#include "steklov/types.hpp"

namespace steklov {

/// Shortest decimal form of x at 12 significant digits.
inline std::string format12(Real x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// x rounded to 12 significant digits.
inline Real round12(Real x) {
  return std::strtod(format12(x).c_str(), nullptr);
}

}  // namespace steklov
