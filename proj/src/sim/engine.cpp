#include "sim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace decoy::sim {

const char* bomb_status_name(Bomb::Status s) {
    switch(s) {
    case Bomb::Status::Carried: return "carried";
    case Bomb::Status::Dropped: return "dropped";
    case Bomb::Status::Planted: return "planted";
    case Bomb::Status::Defused: return "defused";
    case Bomb::Status::Exploded: return "exploded";
    }
    return "?";
}

const char* outcome_reason_name(RoundOutcome::Reason r) {
    switch(r) {
    case RoundOutcome::Reason::Elimination: return "elimination";
    case RoundOutcome::Reason::BombExploded: return "bomb_exploded";
    case RoundOutcome::Reason::BombDefused: return "bomb_defused";
    case RoundOutcome::Reason::TimeExpired: return "time_expired";
    }
    return "?";
}

std::string serialize_events(const std::vector<Event>& events) {
    std::ostringstream os;
    for(const Event& e : events) {
        os << "{\"tick\":" << e.tick << ",\"type\":\"" << e.type << "\"";
        if(e.a >= 0)
            os << ",\"a\":" << e.a;
        if(e.b >= 0)
            os << ",\"b\":" << e.b;
        if(e.value >= 0)
            os << ",\"value\":" << e.value;
        if(!e.detail.empty())
            os << ",\"detail\":\"" << e.detail << "\"";
        os << "}\n";
    }
    return os.str();
}


Engine::Engine(const geometry::LevelGeometry& level, const waypoint::WaypointGraph& graph,
               SimConfig cfg, DamageOracle* oracle, std::uint64_t seed)
    : m_level(level), m_graph(graph), m_cfg(std::move(cfg)), m_oracle(oracle), m_rng(seed) {
    require(m_cfg.n_agents >= 2, Errc::invalid_argument, "engine: need at least 2 agents");
    require(m_cfg.tick_rate > 0 && m_cfg.decision_interval > 0, Errc::invalid_argument,
            "engine: tick rate and decision interval must be positive");
    require(m_cfg.round_time_limit > 0.0, Errc::invalid_argument,
            "engine: non-positive round time limit");
    require(m_graph.node_count() >= 2, Errc::invalid_argument, "engine: graph too small");
    reset(seed);
}

void Engine::reset(std::uint64_t seed) {
    m_rng = Rng(seed);
    m_agents.clear();
    m_events.clear();
    m_samples.clear();
    m_tick = 0;
    m_decisions = 0;
    m_outcome.reset();
    m_limit_ticks = std::lround(m_cfg.round_time_limit * m_cfg.tick_rate);
    m_bomb_ticks = std::lround(m_cfg.bomb_timer * m_cfg.tick_rate);
    m_defuse_ticks = std::lround(m_cfg.defuse_duration * m_cfg.tick_rate);

    bool scripted = !m_cfg.spawn_nodes.empty();
    std::vector<int> spawn_nodes[2];
    if(scripted) {
        require(int(m_cfg.spawn_nodes.size()) == m_cfg.n_agents &&
                    m_cfg.spawn_views.size() == m_cfg.spawn_nodes.size(),
                Errc::invalid_argument,
                "engine: scripted placement must cover every agent");
        for(int node : m_cfg.spawn_nodes)
            m_graph.check_node(node, "engine: scripted placement");
    } else {
        // Waypoints inside each team's spawn region, in id order, then
        // shuffled so the seed picks the arrangement.
        for(const waypoint::Waypoint& w : m_graph.nodes) {
            for(Team team : {Team::T, Team::CT}) {
                for(const auto& box : m_level.spawns(team)) {
                    if(geometry::region_contains(box, w.pos)) {
                        spawn_nodes[int(team)].push_back(w.id);
                        break;
                    }
                }
            }
        }
        for(Team team : {Team::T, Team::CT})
            require(!spawn_nodes[int(team)].empty(), Errc::validation,
                    std::string("engine: no waypoints inside the ") + team_name(team) +
                        " spawn region");
        m_rng.shuffle(spawn_nodes[0]);
        m_rng.shuffle(spawn_nodes[1]);
    }

    int n_t = (m_cfg.n_agents + 1) / 2;
    int placed[2] = {0, 0};
    for(int id = 0; id < m_cfg.n_agents; ++id) {
        AgentState a;
        a.id = id;
        a.team = id < n_t ? Team::T : Team::CT;
        if(scripted) {
            a.node = m_cfg.spawn_nodes[size_t(id)];
            a.view = wrap_degrees(m_cfg.spawn_views[size_t(id)]);
        } else {
            const auto& pool = spawn_nodes[int(a.team)];
            a.node = pool[placed[int(a.team)]++ % pool.size()];
            a.view = 0.0;
        }
        a.pos = m_graph.nodes[a.node].pos;
        a.health = 100;
        a.alive = true;
        a.eq.weapon = a.team == Team::T ? m_cfg.t_weapon : m_cfg.ct_weapon;
        a.eq.armor = m_cfg.armor;
        a.eq.helmet = m_cfg.helmet;
        a.ready_at = 0;
        m_agents.push_back(std::move(a));
    }

    m_bomb = Bomb{};
    m_bomb.carrier = 0; // first T agent
    m_bomb.pos = m_agents[0].pos;

    if(m_cfg.record_samples)
        record_sample();
}

bool Engine::agent_ready(const AgentState& a) const {
    return a.alive && !a.in_transit() && m_tick >= a.ready_at;
}

std::vector<int> Engine::ready_agents() const {
    std::vector<int> ids;
    for(const AgentState& a : m_agents)
        if(agent_ready(a))
            ids.push_back(a.id);
    return ids;
}

void Engine::dispatch(int id, const AgentAction& act, std::vector<int>& invalid) {
    AgentState& a = m_agents[id];
    switch(act.kind) {
    case AgentAction::Kind::Move: {
        const waypoint::Edge* e = m_graph.edge_in_dir(a.node, act.dir);
        if(!e) {
            invalid.push_back(id);
            return;
        }
        a.edge_from = e->from;
        a.edge_to = e->to;
        a.edge_frames = e->frames;
        a.frames_done = 0;
        a.view = bearing_degrees(m_graph.nodes[e->from].pos, m_graph.nodes[e->to].pos);
        break;
    }
    case AgentAction::Kind::Stop:
        a.ready_at = m_tick + m_cfg.decision_interval;
        break;
    case AgentAction::Kind::SetView:
        a.view = wrap_degrees(act.view);
        a.ready_at = m_tick + m_cfg.decision_interval;
        break;
    }
    ++m_decisions;
}

StepResult Engine::step(const std::map<int, AgentAction>& actions) {
    require(!done(), Errc::contract, "step: round already over");
    std::vector<int> ready = ready_agents();
    for(const auto& [id, act] : actions) {
        (void)act;
        require(id >= 0 && id < int(m_agents.size()), Errc::contract,
                "step: unknown agent id " + std::to_string(id));
        require(std::binary_search(ready.begin(), ready.end(), id), Errc::contract,
                "step: action for agent " + std::to_string(id) + ", which is not decision-ready");
    }
    for(int id : ready)
        require(actions.count(id) == 1, Errc::contract,
                "step: decision-ready agent " + std::to_string(id) + " got no action");

    StepResult res;
    for(const auto& [id, act] : actions)
        dispatch(id, act, res.invalid);

    // A rejected action leaves its agent decision-ready; hand control back so
    // the policy can correct itself instead of silently stalling the round.
    if(res.invalid.empty()) {
        while(!m_outcome && ready_agents().empty())
            advance_tick();
    }

    res.ready = ready_agents();
    res.done = done();
    if(res.done) {
        for(const AgentState& a : m_agents)
            res.rewards[a.id] = a.team == m_outcome->winner ? 1.0 : -1.0;
    }
    return res;
}

void Engine::advance_tick() {
    ++m_tick;

    for(AgentState& a : m_agents) {
        if(!a.alive || !a.in_transit())
            continue;
        ++a.frames_done;
        const Vec3& from = m_graph.nodes[a.edge_from].pos;
        const Vec3& to = m_graph.nodes[a.edge_to].pos;
        if(a.frames_done >= a.edge_frames) {
            a.pos = to;
            a.node = a.edge_to;
            a.edge_from = a.edge_to = -1;
            a.edge_frames = a.frames_done = 0;
            a.ready_at = m_tick;
            m_events.push_back(Event{m_tick, "move_complete", a.id, a.node, -1, ""});
        } else {
            a.pos = lerp(from, to, double(a.frames_done) / a.edge_frames);
        }
    }

    if(m_cfg.enable_bomb)
        bomb_update();

    if(m_tick % m_cfg.decision_interval == 0) {
        if(m_cfg.record_samples)
            record_sample();
        if(m_cfg.enable_damage && m_oracle)
            resolve_damage();
    }

    check_outcome();
}

void Engine::resolve_damage() {
    // Row set is frozen at the start of the batch: living cross-team pairs in
    // line of sight, ordered by (attacker, victim). Rows whose attacker or
    // victim falls earlier in this same batch are skipped at application
    // time, so a dead agent neither fires nor absorbs further hits.
    std::vector<std::pair<int, int>> rows;
    for(const AgentState& a : m_agents) {
        if(!a.alive)
            continue;
        for(const AgentState& v : m_agents) {
            if(!v.alive || v.team == a.team)
                continue;
            if(line_of_sight(a, v))
                rows.emplace_back(a.id, v.id);
        }
    }
    for(const auto& [ai, vi] : rows) {
        AgentState& a = m_agents[ai];
        AgentState& v = m_agents[vi];
        if(!a.alive || !v.alive)
            continue;
        DamageDecision d = m_oracle->resolve_pair(a, v, m_rng);
        if(!d.fire)
            continue;
        require(d.damage > 0, Errc::model, "damage oracle produced a non-positive hit");
        v.health = std::max(0, v.health - d.damage);
        m_events.push_back(Event{m_tick, "damage", ai, vi, d.damage, hitgroup_name(d.group)});
        if(v.health == 0)
            on_death(v);
    }
}

void Engine::on_death(AgentState& victim) {
    victim.alive = false;
    victim.edge_from = victim.edge_to = -1;
    victim.edge_frames = victim.frames_done = 0;
    m_events.push_back(Event{m_tick, "death", victim.id, -1, -1, ""});
    if(m_cfg.enable_bomb && m_bomb.status == Bomb::Status::Carried &&
       m_bomb.carrier == victim.id) {
        m_bomb.status = Bomb::Status::Dropped;
        m_bomb.pos = victim.pos;
        m_bomb.carrier = -1;
        m_events.push_back(Event{m_tick, "drop", victim.id, -1, -1, ""});
    }
}

void Engine::bomb_update() {
    switch(m_bomb.status) {
    case Bomb::Status::Carried: {
        AgentState& c = m_agents[m_bomb.carrier];
        m_bomb.pos = c.pos;
        for(const auto& [site, box] : m_level.bombsites) {
            (void)site;
            if(geometry::region_contains(box, c.pos)) {
                m_bomb.status = Bomb::Status::Planted;
                m_bomb.planted_tick = m_tick;
                m_bomb.carrier = -1;
                m_events.push_back(Event{m_tick, "plant", c.id, -1, -1, ""});
                break;
            }
        }
        break;
    }
    case Bomb::Status::Dropped: {
        for(AgentState& a : m_agents) {
            if(a.team != Team::T || !a.alive)
                continue;
            if(dist(a.pos, m_bomb.pos) <= m_cfg.defuse_radius) {
                m_bomb.status = Bomb::Status::Carried;
                m_bomb.carrier = a.id;
                m_events.push_back(Event{m_tick, "pickup", a.id, -1, -1, ""});
                break;
            }
        }
        break;
    }
    case Bomb::Status::Planted: {
        if(m_tick - m_bomb.planted_tick >= m_bomb_ticks) {
            m_bomb.status = Bomb::Status::Exploded;
            m_events.push_back(Event{m_tick, "explode", -1, -1, -1, ""});
            break;
        }
        int near_ct = -1;
        for(const AgentState& a : m_agents) {
            if(a.team == Team::CT && a.alive && dist(a.pos, m_bomb.pos) <= m_cfg.defuse_radius) {
                near_ct = a.id;
                break;
            }
        }
        if(near_ct < 0) {
            m_bomb.defuser = -1;
            m_bomb.defuse_start_tick = -1;
        } else {
            if(m_bomb.defuser != near_ct) {
                m_bomb.defuser = near_ct;
                m_bomb.defuse_start_tick = m_tick;
            }
            if(m_tick - m_bomb.defuse_start_tick >= m_defuse_ticks) {
                m_bomb.status = Bomb::Status::Defused;
                m_events.push_back(Event{m_tick, "defuse", near_ct, -1, -1, ""});
            }
        }
        break;
    }
    case Bomb::Status::Defused:
    case Bomb::Status::Exploded: break;
    }
}

void Engine::check_outcome() {
    if(m_outcome)
        return;
    int living[2] = {0, 0};
    for(const AgentState& a : m_agents)
        if(a.alive)
            ++living[int(a.team)];
    bool planted = m_bomb.status == Bomb::Status::Planted;

    std::optional<RoundOutcome> out;
    if(m_cfg.enable_bomb && m_bomb.status == Bomb::Status::Exploded)
        out = RoundOutcome{Team::T, RoundOutcome::Reason::BombExploded, m_tick};
    else if(m_cfg.enable_bomb && m_bomb.status == Bomb::Status::Defused)
        out = RoundOutcome{Team::CT, RoundOutcome::Reason::BombDefused, m_tick};
    else if(living[int(Team::CT)] == 0)
        out = RoundOutcome{Team::T, RoundOutcome::Reason::Elimination, m_tick};
    else if(living[int(Team::T)] == 0 && !planted)
        out = RoundOutcome{Team::CT, RoundOutcome::Reason::Elimination, m_tick};
    else if(m_tick >= m_limit_ticks && !planted)
        out = RoundOutcome{Team::CT, RoundOutcome::Reason::TimeExpired, m_tick};
    if(out) {
        m_outcome = out;
        m_events.push_back(Event{m_tick, "round_end", -1, -1, -1,
                                 std::string(team_name(out->winner)) + " " +
                                     outcome_reason_name(out->reason)});
    }
}

void Engine::record_sample() {
    Sample s;
    s.tick = m_tick;
    s.pos.reserve(m_agents.size());
    for(const AgentState& a : m_agents) {
        s.pos.push_back(a.pos);
        s.view.push_back(a.view);
        s.health.push_back(a.health);
    }
    m_samples.push_back(std::move(s));
}

bool Engine::line_of_sight(const AgentState& a, const AgentState& b) const {
    Vec3 ea = a.pos;
    ea.z += m_cfg.agent.eye_height;
    Vec3 eb = b.pos;
    eb.z += m_cfg.agent.eye_height;
    Vec3 seg = eb - ea;
    double len = norm(seg);
    if(len < 1e-9)
        return true;
    auto hit = geometry::raycast(m_level, ea, seg * (1.0 / len), len);
    return !hit || hit->distance >= len - 1e-9;
}

Observation Engine::observe(int agent_id) const {
    require(agent_id >= 0 && agent_id < int(m_agents.size()), Errc::invalid_argument,
            "observe: unknown agent id");
    const AgentState& self = m_agents[agent_id];
    Observation obs;
    obs.self = self;
    obs.ready = agent_ready(self);
    if(!self.alive)
        return obs;
    for(const AgentState& other : m_agents) {
        if(other.id == agent_id || !other.alive)
            continue;
        if(line_of_sight(self, other))
            obs.visible.push_back(other);
    }
    if(m_cfg.enable_bomb) {
        if(m_bomb.carrier == agent_id) {
            obs.bomb_visible = true;
        } else if(m_bomb.status == Bomb::Status::Carried) {
            // visible iff its carrier is
            for(const AgentState& v : obs.visible)
                if(v.id == m_bomb.carrier)
                    obs.bomb_visible = true;
        } else {
            Vec3 eye = self.pos;
            eye.z += m_cfg.agent.eye_height;
            Vec3 target = m_bomb.pos;
            target.z += 0.1; // just above the floor
            Vec3 seg = target - eye;
            double len = norm(seg);
            std::optional<geometry::RayHit> hit;
            if(len >= 1e-9)
                hit = geometry::raycast(m_level, eye, seg * (1.0 / len), len);
            obs.bomb_visible = !hit || hit->distance >= len - 1e-9;
        }
        if(obs.bomb_visible)
            obs.bomb = m_bomb;
    }
    return obs;
}

} // namespace decoy::sim
