#pragma once

#include <cstdio>
#include <string>

namespace clobs {

/// 17 significant digits: enough to round-trip any double exactly, and the
/// fixed width keeps serialized reports byte-stable.
inline std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace clobs
