#pragma once

#include <cstdio>
#include <string>

namespace pzlab {

/// Shortest round-trip decimal form; identical inputs give identical bytes.
inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace pzlab
