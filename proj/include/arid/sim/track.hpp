#pragma once

#include <vector>

#include "arid/sim/geometry.hpp"

namespace arid::sim {

struct Waypoint {
    double t = 0;    // seconds from flight start
    double lat = 0;  // degrees
    double lon = 0;
    double alt = 0;  // meters
};

struct Fix {
    double lat = 0, lon = 0, alt = 0;
    double speed = 0;  // m/s, from the active segment
    double cog = 0;    // course over ground, degrees [0, 360)
};

// Scripted waypoint track with linear interpolation (no physics).
class Track {
public:
    explicit Track(std::vector<Waypoint> wps);  // throws std::invalid_argument
    Fix sample(double t) const;                 // clamped to [start, end]
    double start() const { return wps_.front().t; }
    double end() const { return wps_.back().t; }
    const Waypoint& gcs() const { return wps_.front(); }

private:
    std::vector<Waypoint> wps_;
};

}  // namespace arid::sim
