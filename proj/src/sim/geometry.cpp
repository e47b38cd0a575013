#include "arid/sim/geometry.hpp"

namespace arid::sim {

bool point_in_polygon(const GeoPoint& p, const Polygon& poly) {
    if (poly.size() < 3) return false;
    bool inside = false;
    for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const GeoPoint &a = poly[i], &b = poly[j];
        if ((a.lon > p.lon) != (b.lon > p.lon) &&
            p.lat < (b.lat - a.lat) * (p.lon - a.lon) / (b.lon - a.lon) + a.lat)
            inside = !inside;
    }
    return inside;
}

}  // namespace arid::sim
