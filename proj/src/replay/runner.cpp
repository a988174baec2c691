#include "replay/runner.hpp"

#include <limits>

namespace decoy::replay {

ScriptPolicy::ScriptPolicy(std::vector<std::vector<sim::AgentAction>> scripts,
                           std::vector<long> idle_from_tick)
    : m_scripts(std::move(scripts)), m_next(m_scripts.size(), 0),
      m_idle_from(std::move(idle_from_tick)) {
    require(m_scripts.size() == m_idle_from.size(), Errc::invalid_argument,
            "script policy: scripts and idle ticks must cover the same agents");
}

sim::AgentAction ScriptPolicy::act(const sim::Engine& eng, int agent_id, Rng&) {
    if(eng.tick() >= m_idle_from[size_t(agent_id)])
        return sim::make_stop();
    const auto& script = m_scripts[size_t(agent_id)];
    std::size_t& next = m_next[size_t(agent_id)];
    if(next < script.size())
        return script[next++];
    return sim::make_stop();
}

sim::RoundRunResult replay_round(const geometry::LevelGeometry& level,
                                 const waypoint::WaypointGraph& graph,
                                 const data::Round& source, ReplayMode mode,
                                 sim::DamageOracle* oracle, std::uint64_t seed) {
    if(auto why = data::validate_round(source))
        raise(Errc::validation, "replay: source round " + std::to_string(source.round_id) +
                                    " is invalid: " + *why);
    require(mode == ReplayMode::MovementOnly || oracle != nullptr, Errc::invalid_argument,
            "replay: full mechanics need a damage oracle");

    int n = int(source.agents.size());
    sim::SimConfig cfg;
    cfg.n_agents = n;
    cfg.enable_damage = mode == ReplayMode::Full;
    cfg.enable_bomb = mode == ReplayMode::Full;

    // The engine assigns teams and equipment by configuration, so the source
    // round must fit that shape: ids 0..n-1 with the first half T, uniform
    // equipment within each team. Rounds this project records always do.
    std::vector<const data::AgentTrack*> tracks(size_t(n), nullptr);
    for(const data::AgentTrack& tr : source.agents) {
        require(tr.id >= 0 && tr.id < n && !tracks[size_t(tr.id)], Errc::validation,
                "replay: agent ids must be exactly 0.." + std::to_string(n - 1));
        tracks[size_t(tr.id)] = &tr;
    }
    int n_t = (n + 1) / 2;
    for(int id = 0; id < n; ++id) {
        Team expect = id < n_t ? Team::T : Team::CT;
        require(tracks[size_t(id)]->team == expect, Errc::validation,
                "replay: agent " + std::to_string(id) + " is not on the expected team " +
                    team_name(expect));
    }
    const data::AgentTrack& t0 = *tracks[0];
    const data::AgentTrack& c0 = *tracks[size_t(n_t)];
    for(int id = 0; id < n; ++id) {
        const data::AgentTrack& tr = *tracks[size_t(id)];
        const data::AgentTrack& lead = tr.team == Team::T ? t0 : c0;
        require(tr.weapon == lead.weapon && tr.armor == lead.armor && tr.helmet == lead.helmet,
                Errc::validation,
                "replay: per-team equipment must be uniform; agent " + std::to_string(id) +
                    " differs");
    }
    cfg.t_weapon = t0.weapon;
    cfg.ct_weapon = c0.weapon;
    cfg.armor = t0.armor;
    cfg.helmet = t0.helmet;

    // Run as long as the recording did; full-mechanics replays may still end
    // earlier through combat or the bomb.
    double recorded = double(source.outcome.end_tick) / cfg.tick_rate;
    cfg.round_time_limit = std::max(recorded, source.duration());
    require(cfg.round_time_limit > 0.0, Errc::validation,
            "replay: source round has no duration");

    std::vector<std::vector<sim::AgentAction>> scripts;
    scripts.resize(size_t(n));
    cfg.spawn_nodes.resize(size_t(n));
    cfg.spawn_views.assign(size_t(n), 0.0);
    std::vector<long> idle(size_t(n), std::numeric_limits<long>::max());

    for(int id = 0; id < n; ++id) {
        const data::AgentTrack& tr = *tracks[size_t(id)];
        WaypointTrajectory wt = to_waypoints(graph, tr.pos, id);
        require(!graph.out[size_t(wt.nodes.front())].empty(), Errc::validation,
                "replay: start node " + std::to_string(wt.nodes.front()) +
                    " has no outgoing edges; the graph is corrupt");
        cfg.spawn_nodes[size_t(id)] = wt.nodes.front();
        if(wt.nodes.size() > 1)
            cfg.spawn_views[size_t(id)] = bearing_degrees(
                graph.nodes[size_t(wt.nodes[0])].pos, graph.nodes[size_t(wt.nodes[1])].pos);
        scripts[size_t(id)] = to_actions(graph, wt);

        if(mode == ReplayMode::MovementOnly) {
            for(std::size_t k = 0; k < tr.health.size(); ++k) {
                if(tr.health[k] == 0) {
                    idle[size_t(id)] = long(k) * cfg.decision_interval;
                    break;
                }
            }
        }
    }

    ScriptPolicy policy(std::move(scripts), std::move(idle));
    return sim::run_round(level, graph, cfg, policy,
                          mode == ReplayMode::Full ? oracle : nullptr, seed, source.round_id);
}

} // namespace decoy::replay
