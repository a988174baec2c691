#include "data/round.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace decoy::data {

int aligned_tick(double t_seconds, int fps) {
    // round-half-down puts a midpoint timestamp on the earlier sample
    return int(std::ceil(t_seconds * fps - 0.5));
}

std::optional<std::string> validate_round(const Round& r) {
    if(r.fps <= 0)
        return "non-positive sample rate";
    if(r.agents.empty())
        return "no agent tracks";
    std::size_t T = r.agents.front().pos.size();
    if(T == 0)
        return "empty trajectories";
    if(double(T - 1) / r.fps > 155.0 + 1e-9)
        return "round exceeds the 155 s limit";
    for(const AgentTrack& a : r.agents) {
        if(a.pos.size() != T || a.view.size() != T || a.health.size() != T)
            return "agent " + std::to_string(a.id) + ": track lengths disagree";
        for(std::size_t k = 1; k < T; ++k)
            if(a.health[k] > a.health[k - 1])
                return "agent " + std::to_string(a.id) + ": health increases at sample " +
                       std::to_string(k);
    }
    auto find_agent = [&](int id) -> const AgentTrack* {
        for(const AgentTrack& a : r.agents)
            if(a.id == id)
                return &a;
        return nullptr;
    };
    for(const DamageEvent& e : r.damage_events) {
        if(e.damage <= 0)
            return "non-positive damage event";
        if(e.attacker == e.victim)
            return "self-damage event";
        const AgentTrack* att = find_agent(e.attacker);
        const AgentTrack* vic = find_agent(e.victim);
        if(!att || !vic)
            return "damage event references unknown agent";
        int k = aligned_tick(e.t, r.fps);
        if(k < 0 || k >= int(T))
            return "damage event at " + std::to_string(e.t) + " s falls outside the round";
        if(att->health[k] <= 0 || vic->health[k] <= 0)
            return "damage event at " + std::to_string(e.t) + " s references a dead agent";
    }
    return std::nullopt;
}

namespace {

json track_to_json(const AgentTrack& a) {
    json pos = json::array();
    for(const Vec3& p : a.pos)
        pos.push_back(json::array({p.x, p.y, p.z}));
    return json{{"id", a.id},          {"team", team_name(a.team)}, {"weapon", a.weapon},
                {"armor", a.armor},    {"helmet", a.helmet},        {"pos", pos},
                {"view", a.view},      {"health", a.health}};
}

AgentTrack track_from_json(const json& j, const std::string& ctx) {
    AgentTrack a;
    a.id = field_as<int>(j, "id", ctx);
    a.team = team_from_name(field_as<std::string>(j, "team", ctx));
    a.weapon = field_as<std::string>(j, "weapon", ctx);
    a.armor = field_as<int>(j, "armor", ctx);
    a.helmet = field_as<bool>(j, "helmet", ctx);
    for(const json& p : j.at("pos")) {
        require(p.is_array() && p.size() == 3, Errc::parse, ctx + ": pos entries must be [x,y,z]");
        a.pos.push_back(Vec3{p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    a.view = j.at("view").get<std::vector<double>>();
    a.health = j.at("health").get<std::vector<int>>();
    return a;
}

json round_to_json(const Round& r) {
    json agents = json::array();
    for(const AgentTrack& a : r.agents)
        agents.push_back(track_to_json(a));
    json events = json::array();
    for(const DamageEvent& e : r.damage_events)
        events.push_back(json{{"attacker", e.attacker},
                              {"victim", e.victim},
                              {"damage", e.damage},
                              {"hit_group", hitgroup_name(e.group)},
                              {"t", e.t}});
    json bombs = json::array();
    for(const BombEvent& b : r.bomb_events)
        bombs.push_back(json{{"kind", b.kind}, {"t", b.t}, {"agent", b.agent}});
    return json{{"round_id", r.round_id},
                {"agents", agents},
                {"damage_events", events},
                {"bomb_events", bombs},
                {"outcome", json{{"winner", team_name(r.outcome.winner)},
                                 {"reason", r.outcome.reason},
                                 {"end_tick", r.outcome.end_tick}}}};
}

Round round_from_json(const json& j, const std::string& map, int fps, const std::string& ctx) {
    Round r;
    r.map = map;
    r.fps = fps;
    r.round_id = field_as<int>(j, "round_id", ctx);
    for(const json& ja : j.at("agents"))
        r.agents.push_back(track_from_json(ja, ctx));
    for(const json& je : j.at("damage_events")) {
        DamageEvent e;
        e.attacker = field_as<int>(je, "attacker", ctx);
        e.victim = field_as<int>(je, "victim", ctx);
        e.damage = field_as<int>(je, "damage", ctx);
        e.group = hitgroup_from_name(field_as<std::string>(je, "hit_group", ctx));
        e.t = field_as<double>(je, "t", ctx);
        r.damage_events.push_back(e);
    }
    if(j.contains("bomb_events")) {
        for(const json& jb : j.at("bomb_events")) {
            BombEvent b;
            b.kind = field_as<std::string>(jb, "kind", ctx);
            b.t = field_as<double>(jb, "t", ctx);
            b.agent = field_as<int>(jb, "agent", ctx);
            r.bomb_events.push_back(b);
        }
    }
    const json& jo = j.at("outcome");
    r.outcome.winner = team_from_name(field_as<std::string>(jo, "winner", ctx));
    r.outcome.reason = field_as<std::string>(jo, "reason", ctx);
    r.outcome.end_tick = field_as<long>(jo, "end_tick", ctx);
    return r;
}

} // namespace

json corpus_to_json(const Corpus& c) {
    json rounds = json::array();
    for(const Round& r : c.rounds)
        rounds.push_back(round_to_json(r));
    return json{{"format_version", 1}, {"map", c.map}, {"tick_rate", c.fps}, {"rounds", rounds}};
}

Corpus corpus_from_json(const json& j, const std::string& ctx,
                        std::vector<std::string>* diagnostics) {
    require(j.value("format_version", 0) == 1, Errc::parse,
            ctx + ": unsupported corpus format version");
    Corpus c;
    c.map = field_as<std::string>(j, "map", ctx);
    c.fps = field_as<int>(j, "tick_rate", ctx);
    require(c.fps > 0, Errc::parse, ctx + ": non-positive tick_rate");
    int idx = 0;
    for(const json& jr : j.at("rounds")) {
        Round r = round_from_json(jr, c.map, c.fps, ctx + " round " + std::to_string(idx));
        if(auto bad = validate_round(r)) {
            if(diagnostics)
                diagnostics->push_back(ctx + ": skipped round " + std::to_string(idx) + ": " +
                                       *bad);
        } else {
            c.rounds.push_back(std::move(r));
        }
        ++idx;
    }
    return c;
}

Corpus parse_rounds(const std::string& path, std::vector<std::string>* diagnostics) {
    return corpus_from_json(load_json(path), path, diagnostics);
}

void save_corpus(const std::string& path, const Corpus& c) { save_json(path, corpus_to_json(c)); }

Round align_damage(const Round& r) {
    Round out = r;
    struct Key {
        int tick, attacker, victim, group;
        bool operator<(const Key& o) const {
            if(tick != o.tick)
                return tick < o.tick;
            if(attacker != o.attacker)
                return attacker < o.attacker;
            if(victim != o.victim)
                return victim < o.victim;
            return group < o.group;
        }
    };
    std::map<Key, int> merged;
    for(const DamageEvent& e : r.damage_events) {
        Key k{aligned_tick(e.t, r.fps), e.attacker, e.victim, int(e.group)};
        merged[k] += e.damage;
    }
    out.damage_events.clear();
    for(const auto& [k, dmg] : merged) {
        DamageEvent e;
        e.attacker = k.attacker;
        e.victim = k.victim;
        e.damage = dmg;
        e.group = HitGroup(k.group);
        e.t = double(k.tick) / r.fps;
        out.damage_events.push_back(e);
    }
    return out;
}

Split split_rounds(const std::vector<Round>& rounds, std::uint64_t seed) {
    int n = int(rounds.size());
    require(n >= 10, Errc::invalid_argument,
            "split: need at least 10 rounds, got " + std::to_string(n));
    std::vector<int> idx(n);
    for(int i = 0; i < n; ++i)
        idx[i] = i;
    Rng rng(seed);
    rng.shuffle(idx);
    int n_train = n * 8 / 10;
    int n_val = n / 10;
    Split s;
    for(int i = 0; i < n; ++i) {
        const Round& r = rounds[idx[i]];
        if(i < n_train)
            s.train.push_back(r);
        else if(i < n_train + n_val)
            s.val.push_back(r);
        else
            s.test.push_back(r);
    }
    return s;
}

} // namespace decoy::data
