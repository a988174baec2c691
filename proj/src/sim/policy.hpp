#pragma once

#include "sim/engine.hpp"

namespace decoy::sim {

// Salt mixed into the engine seed to derive the policy rng. Reusing the
// engine seed verbatim would correlate spawn shuffling with action choices.
constexpr std::uint64_t POLICY_SEED_SALT = 0xda3e39cb94b95bdbULL;

// Scripted controller queried once per decision-ready agent. Policies draw
// from the rng they are handed, never from global state, so a run is fully
// determined by its seeds.
class Policy {
  public:
    virtual ~Policy() = default;
    virtual AgentAction act(const Engine& eng, int agent_id, Rng& rng) = 0;
};

// Uniformly random outgoing edge at every decision; never stops. Used by the
// benchmark and by corpus synthesis when broad map coverage matters.
class RandomWalkPolicy : public Policy {
  public:
    AgentAction act(const Engine& eng, int agent_id, Rng& rng) override;
};

// Everyone marches to the first bombsite by shortest path and holds there.
// Forces the teams through contact, which scripted corpora for combat need.
class RushPolicy : public Policy {
  public:
    RushPolicy(const geometry::LevelGeometry& level, const waypoint::WaypointGraph& graph);
    AgentAction act(const Engine& eng, int agent_id, Rng& rng) override;

  private:
    int m_target = -1;
};

} // namespace decoy::sim
