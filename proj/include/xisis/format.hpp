#pragma once

#include <cstdio>
#include <string>

namespace xisis {

/// Shortest-safe text form of a double: 17 significant digits, so parsing
/// the text gives back the identical value.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace xisis
