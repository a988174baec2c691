#pragma once

#include "geometry/level.hpp"
#include "geometry/queries.hpp"
#include "sim/agent.hpp"
#include "waypoint/graph.hpp"

#include <map>
#include <optional>

namespace decoy::sim {

struct SimConfig {
    int n_agents = 10;
    int tick_rate = 60;        // physics ticks per second
    int decision_interval = 30; // ticks between damage resolutions; also the
                                // duration of stop and set_view actions
    double round_time_limit = 155.0; // seconds; expiry only ends unplanted rounds
    double bomb_timer = 40.0;
    double defuse_duration = 5.0;
    double defuse_radius = 1.5; // also the pickup radius for a dropped bomb
    AgentSpec agent;
    bool enable_damage = true;
    bool enable_bomb = true;
    bool record_samples = true; // keep 2 FPS state snapshots in memory
    std::string t_weapon = "ak47";
    std::string ct_weapon = "m4a4";
    int armor = 100;
    bool helmet = true;

    // Scripted placement for replays: agent id -> start node / initial view.
    // Empty means the default seeded spawn-region placement. When given, both
    // must cover every agent and no spawn randomness is consumed.
    std::vector<int> spawn_nodes;
    std::vector<double> spawn_views;
};

struct Bomb {
    enum class Status { Carried, Dropped, Planted, Defused, Exploded };
    Status status = Status::Carried;
    Vec3 pos;
    int carrier = -1;
    long planted_tick = -1;
    int defuser = -1;
    long defuse_start_tick = -1;
};

const char* bomb_status_name(Bomb::Status s);

struct RoundOutcome {
    enum class Reason { Elimination, BombExploded, BombDefused, TimeExpired };
    Team winner = Team::CT;
    Reason reason = Reason::TimeExpired;
    long end_tick = 0;
};

const char* outcome_reason_name(RoundOutcome::Reason r);

// One event-log record. `a` and `b` are agent or node ids depending on type,
// `value` carries damage amounts, `detail` carries hit groups and outcome
// descriptions; unused fields stay at their defaults and are omitted from the
// serialized form.
struct Event {
    long tick = 0;
    std::string type; // move_complete damage death plant defuse explode drop pickup round_end
    int a = -1;
    int b = -1;
    int value = -1;
    std::string detail;
};

// Line-delimited records; identical runs serialize to identical bytes.
std::string serialize_events(const std::vector<Event>& events);

// State snapshot taken every decision interval, before damage resolution.
struct Sample {
    long tick = 0;
    std::vector<Vec3> pos;
    std::vector<double> view;
    std::vector<int> health;
};

struct Observation {
    AgentState self;
    std::vector<AgentState> visible; // living others in line of sight, ascending id
    bool bomb_visible = false;
    Bomb bomb;
    bool ready = false;
};

struct StepResult {
    std::vector<int> ready;   // agents awaiting an action after this step
    std::vector<int> invalid; // agents whose submitted action was rejected
    std::map<int, double> rewards;
    bool done = false;
};

// Deterministic round simulator. Physics advances tick by tick; an agent
// occupies a waypoint until it is given a move action, then interpolates
// along the edge for the edge's measured frame count. step() returns as soon
// as some living agent needs a new action, so agents act asynchronously at
// their own cadence.
class Engine {
  public:
    Engine(const geometry::LevelGeometry& level, const waypoint::WaypointGraph& graph,
           SimConfig cfg, DamageOracle* oracle, std::uint64_t seed);

    void reset(std::uint64_t seed);
    StepResult step(const std::map<int, AgentAction>& actions);

    const std::vector<AgentState>& agents() const { return m_agents; }
    const Bomb& bomb() const { return m_bomb; }
    long tick() const { return m_tick; }
    double clock() const { return double(m_tick) / m_cfg.tick_rate; }
    std::vector<int> ready_agents() const;
    bool done() const { return m_outcome.has_value(); }
    const std::optional<RoundOutcome>& outcome() const { return m_outcome; }
    const std::vector<Event>& events() const { return m_events; }
    const std::vector<Sample>& samples() const { return m_samples; }
    long decisions_dispatched() const { return m_decisions; }

    Observation observe(int agent_id) const;
    bool line_of_sight(const AgentState& a, const AgentState& b) const;

    const SimConfig& config() const { return m_cfg; }
    const geometry::LevelGeometry& level() const { return m_level; }
    const waypoint::WaypointGraph& graph() const { return m_graph; }

  private:
    void dispatch(int id, const AgentAction& act, std::vector<int>& invalid);
    void advance_tick();
    void resolve_damage();
    void bomb_update();
    void record_sample();
    void check_outcome();
    void on_death(AgentState& victim);
    bool agent_ready(const AgentState& a) const;

    const geometry::LevelGeometry& m_level;
    const waypoint::WaypointGraph& m_graph;
    SimConfig m_cfg;
    DamageOracle* m_oracle;
    Rng m_rng;

    std::vector<AgentState> m_agents;
    Bomb m_bomb;
    long m_tick = 0;
    long m_decisions = 0;
    std::optional<RoundOutcome> m_outcome;
    std::vector<Event> m_events;
    std::vector<Sample> m_samples;

    long m_limit_ticks = 0;
    long m_bomb_ticks = 0;
    long m_defuse_ticks = 0;
};

} // namespace decoy::sim
