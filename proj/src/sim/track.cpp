#include "arid/sim/track.hpp"

#include <cmath>
#include <stdexcept>

namespace arid::sim {

namespace {
constexpr double kMetersPerDegLat = 111320.0;
constexpr double kPi = 3.14159265358979323846;

// Equirectangular local approximation; fine for the km-scale tracks we model.
void segment_motion(const Waypoint& a, const Waypoint& b, double& speed, double& cog) {
    double dt = b.t - a.t;
    double dn = (b.lat - a.lat) * kMetersPerDegLat;
    double de = (b.lon - a.lon) * kMetersPerDegLat * std::cos(a.lat * kPi / 180.0);
    double dist = std::hypot(dn, de);
    speed = dt > 0 ? dist / dt : 0;
    cog = dist > 0 ? std::fmod(std::atan2(de, dn) * 180.0 / kPi + 360.0, 360.0) : 0;
}
}  // namespace

Track::Track(std::vector<Waypoint> wps) : wps_(std::move(wps)) {
    if (wps_.empty()) throw std::invalid_argument("track: needs at least one waypoint");
    for (size_t i = 1; i < wps_.size(); i++)
        if (wps_[i].t <= wps_[i - 1].t)
            throw std::invalid_argument("track: waypoint times must strictly increase");
}

Fix Track::sample(double t) const {
    Fix f;
    if (wps_.size() == 1 || t <= wps_.front().t) {
        const Waypoint& w = wps_.front();
        f.lat = w.lat;
        f.lon = w.lon;
        f.alt = w.alt;
        if (wps_.size() > 1) segment_motion(wps_[0], wps_[1], f.speed, f.cog);
        return f;
    }
    if (t >= wps_.back().t) {
        const Waypoint& w = wps_.back();
        f.lat = w.lat;
        f.lon = w.lon;
        f.alt = w.alt;
        segment_motion(wps_[wps_.size() - 2], wps_.back(), f.speed, f.cog);
        return f;
    }
    size_t i = 1;
    while (wps_[i].t < t) i++;
    const Waypoint &a = wps_[i - 1], &b = wps_[i];
    double u = (t - a.t) / (b.t - a.t);
    f.lat = a.lat + u * (b.lat - a.lat);
    f.lon = a.lon + u * (b.lon - a.lon);
    f.alt = a.alt + u * (b.alt - a.alt);
    segment_motion(a, b, f.speed, f.cog);
    return f;
}

}  // namespace arid::sim
