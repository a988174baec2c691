#pragma once

#include "sim/agent.hpp"
#include "waypoint/graph.hpp"

namespace decoy::replay {

// Discrete form of one agent's recorded movement: the waypoints it passed
// through plus how many samples it lingered at each. Consecutive nodes are
// graph-adjacent and never repeat.
struct WaypointTrajectory {
    int agent_id = -1;
    std::vector<int> nodes;
    std::vector<int> dwell; // samples spent at the node before departing; >= 1
    long start_tick = 0;
};

// Snaps every recorded position to its nearest waypoint, collapses runs into
// dwell counts, and repairs skipped nodes via shortest paths (repair
// insertions carry dwell 1, i.e. pass-through).
WaypointTrajectory to_waypoints(const waypoint::WaypointGraph& g,
                                const std::vector<Vec3>& positions, int agent_id,
                                long start_tick = 0);

// Expands every non-adjacent consecutive pair into its shortest path. Output
// satisfies the adjacency invariant; already-adjacent input passes through
// unchanged.
std::vector<int> fill_gaps(const waypoint::WaypointGraph& g, const std::vector<int>& nodes);

// One move per consecutive node pair, with stop actions reproducing recorded
// dwell; a single-node trajectory becomes one stop.
std::vector<sim::AgentAction> to_actions(const waypoint::WaypointGraph& g,
                                         const WaypointTrajectory& wt);

// Linear interpolation onto `target_len` uniformly spaced indices; endpoints
// are preserved exactly. Input length must be at least 2.
std::vector<Vec3> resample(const std::vector<Vec3>& series, int target_len);
std::vector<double> resample(const std::vector<double>& series, int target_len);

} // namespace decoy::replay
