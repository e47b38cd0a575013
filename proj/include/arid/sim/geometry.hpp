#pragma once

#include <vector>

namespace arid::sim {

struct GeoPoint {
    double lat = 0, lon = 0;  // degrees
};
using Polygon = std::vector<GeoPoint>;

// Even-odd rule on the lat/lon plane; altitude is ignored.
bool point_in_polygon(const GeoPoint& p, const Polygon& poly);

}  // namespace arid::sim
