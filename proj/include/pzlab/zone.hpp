#pragma once

#include <stdexcept>

namespace pzlab {

/// Protection-zone geometry on the half line: either the connected interval
/// [0, L] or the separate interval [L1, L2] with 0 < L1 < L2.
struct ProtectionZone {
    enum class Geometry { connected, separate };

    static ProtectionZone connected(double L) {
        if (!(L > 0)) throw std::invalid_argument("ProtectionZone: L must be positive");
        return ProtectionZone{Geometry::connected, 0.0, L};
    }
    static ProtectionZone separate(double L1, double L2) {
        if (!(L1 > 0 && L2 > L1))
            throw std::invalid_argument("ProtectionZone: need 0 < L1 < L2");
        return ProtectionZone{Geometry::separate, L1, L2};
    }

    Geometry geometry = Geometry::connected;
    double L1 = 0.0;  // zero for connected zones
    double L2 = 0.0;  // the outer interface (L for connected zones)

    bool is_separate() const { return geometry == Geometry::separate; }
    double length() const { return L2 - L1; }
    double outer_edge() const { return L2; }
    bool contains(double x) const { return x >= L1 && x <= L2; }
};

}  // namespace pzlab
