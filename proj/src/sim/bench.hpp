#pragma once

#include "core/jsonio.hpp"
#include "sim/engine.hpp"

namespace decoy::sim {

struct SpeedReport {
    int n_agents = 0;
    long physics_ticks = 0;
    long decisions = 0;
    double wall_time = 0.0;    // seconds
    double physics_time = 0.0; // physics_ticks / tick_rate
    double ticks_per_sec = 0.0;
    double time_scale = 0.0; // simulated seconds per wall second
};

// Runs random-walk rounds (damage and bomb disabled, no recording) until at
// least `total_decisions` actions have been dispatched, restarting the round
// whenever the clock expires. The derived fields satisfy the SpeedReport
// identities exactly.
SpeedReport run_benchmark(const geometry::LevelGeometry& level,
                          const waypoint::WaypointGraph& graph, int n_agents,
                          long total_decisions, std::uint64_t seed);

std::string format_speed_table(const std::vector<SpeedReport>& rows);
json speed_report_to_json(const SpeedReport& r);

} // namespace decoy::sim
