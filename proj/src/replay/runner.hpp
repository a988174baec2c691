#pragma once

#include "data/round.hpp"
#include "replay/convert.hpp"
#include "sim/simulate.hpp"

namespace decoy::replay {

enum class ReplayMode {
    MovementOnly, // damage and bomb mechanics off; pure movement fidelity
    Full,         // all mechanics on; `oracle` decides damage
};

// Drives a recorded round back through the simulator: every agent starts at
// its first snapped waypoint facing its first leg and then walks its derived
// action script, padding with stops once the script runs out. In
// MovementOnly mode agents additionally go idle at their recorded death time,
// since nothing in the replay can kill them.
sim::RoundRunResult replay_round(const geometry::LevelGeometry& level,
                                 const waypoint::WaypointGraph& graph,
                                 const data::Round& source, ReplayMode mode,
                                 sim::DamageOracle* oracle, std::uint64_t seed);

// The scripted controller replay_round uses; exposed so tests can drive the
// engine with hand-built scripts.
class ScriptPolicy : public sim::Policy {
  public:
    ScriptPolicy(std::vector<std::vector<sim::AgentAction>> scripts,
                 std::vector<long> idle_from_tick);

    sim::AgentAction act(const sim::Engine& eng, int agent_id, Rng& rng) override;

  private:
    std::vector<std::vector<sim::AgentAction>> m_scripts;
    std::vector<std::size_t> m_next;
    std::vector<long> m_idle_from; // tick from which only stops are issued
};

} // namespace decoy::replay
