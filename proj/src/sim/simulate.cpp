#include "sim/simulate.hpp"

namespace decoy::sim {

data::Round engine_to_round(const Engine& eng, int round_id) {
    const SimConfig& cfg = eng.config();
    require(cfg.tick_rate % cfg.decision_interval == 0, Errc::contract,
            "recording needs decision_interval to divide tick_rate");
    require(eng.outcome().has_value(), Errc::contract,
            "cannot convert an unfinished round to a recording");
    require(!eng.samples().empty(), Errc::contract,
            "engine kept no samples; record_samples must stay on for recorded runs");

    data::Round r;
    r.round_id = round_id;
    r.map = eng.level().name;
    r.fps = cfg.tick_rate / cfg.decision_interval;

    const auto& samples = eng.samples();
    for(const AgentState& a : eng.agents()) {
        data::AgentTrack tr;
        tr.id = a.id;
        tr.team = a.team;
        tr.weapon = a.eq.weapon;
        tr.armor = a.eq.armor;
        tr.helmet = a.eq.helmet;
        tr.pos.reserve(samples.size());
        tr.view.reserve(samples.size());
        tr.health.reserve(samples.size());
        for(const Sample& s : samples) {
            tr.pos.push_back(s.pos[size_t(a.id)]);
            tr.view.push_back(s.view[size_t(a.id)]);
            tr.health.push_back(s.health[size_t(a.id)]);
        }
        r.agents.push_back(std::move(tr));
    }

    for(const Event& ev : eng.events()) {
        double t = double(ev.tick) / cfg.tick_rate;
        if(ev.type == "damage") {
            data::DamageEvent de;
            de.attacker = ev.a;
            de.victim = ev.b;
            de.damage = ev.value;
            de.group = hitgroup_from_name(ev.detail);
            de.t = t;
            r.damage_events.push_back(de);
        } else if(ev.type == "plant" || ev.type == "defuse" || ev.type == "explode" ||
                  ev.type == "drop" || ev.type == "pickup") {
            r.bomb_events.push_back({ev.type, t, ev.a});
        }
    }

    const RoundOutcome& oc = *eng.outcome();
    r.outcome.winner = oc.winner;
    r.outcome.reason = outcome_reason_name(oc.reason);
    r.outcome.end_tick = oc.end_tick;
    return r;
}

RoundRunResult run_round(const geometry::LevelGeometry& level,
                         const waypoint::WaypointGraph& graph, SimConfig cfg, Policy& policy,
                         DamageOracle* oracle, std::uint64_t seed, int round_id) {
    cfg.record_samples = true;
    Engine eng(level, graph, cfg, oracle, seed);
    Rng prng(seed ^ POLICY_SEED_SALT);

    std::vector<int> ready = eng.ready_agents();
    while(!eng.done()) {
        std::map<int, AgentAction> actions;
        for(int id : ready)
            actions[id] = policy.act(eng, id, prng);
        StepResult res = eng.step(actions);
        // Policies only propose edges they looked up on the graph, so a
        // rejection here is a bug in the policy, not a caller mistake.
        if(!res.invalid.empty())
            raise(Errc::internal, "policy produced an invalid action for agent " +
                                      std::to_string(res.invalid.front()));
        ready = res.ready;
    }

    RoundRunResult out;
    out.round = engine_to_round(eng, round_id);
    out.events = eng.events();
    out.outcome = *eng.outcome();
    out.ticks = eng.tick();
    out.decisions = eng.decisions_dispatched();
    return out;
}

} // namespace decoy::sim
