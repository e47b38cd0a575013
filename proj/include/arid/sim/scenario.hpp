#pragma once

#include <string>

#include "arid/sim/actors.hpp"

namespace arid::sim {

// Runs a full broadcast scenario from a JSON config string and returns the
// JSON report string. Deterministic for a fixed seed, except for the wall
// clock measurements under the report's "timing" key. Throws ConfigError on
// invalid configuration before the simulation starts.
//
// Config schema (schema: 1):
//   seed: u64   duration: seconds   tau: seconds (default 5)
//   curve: "production" | "toy" (default "production")
//   zone: [[lat, lon], ...] (optional no-fly polygon)
//   channel: {"loss": 0.0}
//   adversary: {"replay_every": n, "replay_delay": seconds} (optional)
//   drones: [{name, scheme: "cs"|"ds-cca2"|"ds-cpa", rate, precompute: bool,
//             track: [{t, lat, lon, alt}, ...]}]
std::string run_scenario(const std::string& config_json);

}  // namespace arid::sim
