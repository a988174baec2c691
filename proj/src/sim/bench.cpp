#include "sim/bench.hpp"

#include "sim/policy.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace decoy::sim {

SpeedReport run_benchmark(const geometry::LevelGeometry& level,
                          const waypoint::WaypointGraph& graph, int n_agents,
                          long total_decisions, std::uint64_t seed) {
    require(total_decisions > 0, Errc::invalid_argument, "benchmark: no decisions requested");
    SimConfig cfg;
    cfg.n_agents = n_agents;
    cfg.enable_damage = false;
    cfg.enable_bomb = false;
    cfg.record_samples = false;

    Engine eng(level, graph, cfg, nullptr, seed);
    RandomWalkPolicy policy;
    Rng prng(seed ^ POLICY_SEED_SALT);

    long done_decisions = 0;
    long done_ticks = 0;
    std::uint64_t round = 0;

    auto t0 = std::chrono::steady_clock::now();
    while(done_decisions + eng.decisions_dispatched() < total_decisions) {
        if(eng.done()) {
            done_decisions += eng.decisions_dispatched();
            done_ticks += eng.tick();
            eng.reset(seed + ++round);
            continue;
        }
        std::map<int, AgentAction> actions;
        for(int id : eng.ready_agents())
            actions[id] = policy.act(eng, id, prng);
        eng.step(actions);
    }
    auto t1 = std::chrono::steady_clock::now();

    SpeedReport r;
    r.n_agents = n_agents;
    r.physics_ticks = done_ticks + eng.tick();
    r.decisions = done_decisions + eng.decisions_dispatched();
    r.wall_time = std::chrono::duration<double>(t1 - t0).count();
    r.physics_time = double(r.physics_ticks) / cfg.tick_rate;
    r.ticks_per_sec = double(r.physics_ticks) / r.wall_time;
    r.time_scale = r.physics_time / r.wall_time;
    return r;
}

std::string format_speed_table(const std::vector<SpeedReport>& rows) {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%8s %14s %12s %12s %14s %12s %12s\n", "agents", "ticks",
                  "decisions", "wall_s", "physics_s", "ticks_per_s", "time_scale");
    os << buf;
    for(const SpeedReport& r : rows) {
        std::snprintf(buf, sizeof buf, "%8d %14ld %12ld %12.2f %14.2f %12.2f %12.2f\n",
                      r.n_agents, r.physics_ticks, r.decisions, r.wall_time, r.physics_time,
                      r.ticks_per_sec, r.time_scale);
        os << buf;
    }
    return os.str();
}

json speed_report_to_json(const SpeedReport& r) {
    return json{{"n_agents", r.n_agents},         {"physics_ticks", r.physics_ticks},
                {"decisions", r.decisions},       {"wall_time", r.wall_time},
                {"physics_time", r.physics_time}, {"ticks_per_sec", r.ticks_per_sec},
                {"time_scale", r.time_scale}};
}

} // namespace decoy::sim
