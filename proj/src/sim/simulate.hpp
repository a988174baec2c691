#pragma once

#include "data/round.hpp"
#include "sim/policy.hpp"

namespace decoy::sim {

struct RoundRunResult {
    data::Round round;
    std::vector<Event> events;
    RoundOutcome outcome;
    long ticks = 0;
    long decisions = 0;
};

// Drives one full round with the given policy and damage oracle and packages
// the 2 FPS recording as a dataset Round. `oracle` may be null when
// cfg.enable_damage is false.
RoundRunResult run_round(const geometry::LevelGeometry& level,
                         const waypoint::WaypointGraph& graph, SimConfig cfg, Policy& policy,
                         DamageOracle* oracle, std::uint64_t seed, int round_id);

// Recorded state of a finished engine as a dataset Round (used by run_round
// and by the replay pipeline, whose engines are driven differently).
data::Round engine_to_round(const Engine& eng, int round_id);

} // namespace decoy::sim
