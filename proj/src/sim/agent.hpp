#pragma once

#include "core/agent_spec.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"
#include "core/vec.hpp"
#include "waypoint/compass.hpp"

#include <string>
#include <vector>

namespace decoy::sim {

struct Equipment {
    std::string weapon = "unknown";
    int armor = 0; // 0..100
    bool helmet = false;
};

// Full per-agent simulation state. Movement bookkeeping (the active edge and
// its progress) lives here too so observers can reconstruct exactly where an
// agent is mid-transit.
struct AgentState {
    int id = -1;
    Team team = Team::T;
    Vec3 pos;
    double view = 0.0; // degrees, [0, 360), 0 = north, 90 = east
    int health = 100;
    Equipment eq;
    bool alive = true;

    int node = -1;      // occupied waypoint; kept at the origin node while moving
    int edge_from = -1; // active edge endpoints, -1/-1 when settled
    int edge_to = -1;
    int edge_frames = 0;
    int frames_done = 0;
    long ready_at = 0; // earliest tick eligible for the next action

    bool in_transit() const { return edge_to >= 0; }
};

struct AgentAction {
    enum class Kind { Move, Stop, SetView };
    Kind kind = Kind::Stop;
    waypoint::CompassDir dir = waypoint::CompassDir::N; // Move
    double view = 0.0;                                  // SetView, degrees
};

inline AgentAction make_move(waypoint::CompassDir d) {
    return AgentAction{AgentAction::Kind::Move, d, 0.0};
}
inline AgentAction make_stop() { return AgentAction{}; }
inline AgentAction make_set_view(double deg) {
    return AgentAction{AgentAction::Kind::SetView, waypoint::CompassDir::N, deg};
}

// Outcome of one ordered attacker -> victim query.
struct DamageDecision {
    bool fire = false;
    int damage = 0;
    HitGroup group = HitGroup::Chest;
};

// Damage source the engine consults for each visible ordered pair at every
// resolution step. Implemented by the trained DIP/DOG pair and by the
// rule-based ground-truth laws used for synthetic corpora; the engine cannot
// tell them apart, which is what makes oracle-substitution experiments work.
class DamageOracle {
  public:
    virtual ~DamageOracle() = default;
    // Called once per applicable row, in row order. May draw from rng; the
    // engine guarantees the call sequence is deterministic, so consuming
    // randomness here keeps runs reproducible.
    virtual DamageDecision resolve_pair(const AgentState& attacker, const AgentState& victim,
                                        Rng& rng) = 0;
};

} // namespace decoy::sim
