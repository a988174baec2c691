#include "data/synth.hpp"

namespace decoy::data {

json synth_spec_to_json(const SynthSpec& s) {
    return json{{"format_version", 1},
                {"rounds", s.rounds},
                {"n_agents", s.n_agents},
                {"seed", s.seed},
                {"policy", s.policy},
                {"round_time_limit", s.round_time_limit},
                {"enable_bomb", s.enable_bomb},
                {"law", law_to_json(s.law)}};
}

SynthSpec synth_spec_from_json(const json& j, const std::string& ctx) {
    SynthSpec s;
    s.rounds = field_as<int>(j, "rounds", ctx);
    s.n_agents = field_as<int>(j, "n_agents", ctx);
    s.seed = field_as<std::uint64_t>(j, "seed", ctx);
    s.policy = field_as<std::string>(j, "policy", ctx);
    s.round_time_limit = field_as<double>(j, "round_time_limit", ctx);
    s.enable_bomb = field_as<bool>(j, "enable_bomb", ctx);
    s.law = law_from_json(field_as<json>(j, "law", ctx), ctx + ".law");
    require(s.rounds >= 0, Errc::validation, ctx + ": rounds must be non-negative");
    require(s.policy == "random_walk" || s.policy == "rush", Errc::validation,
            ctx + ": unknown policy '" + s.policy + "'");
    return s;
}

Corpus synth_rounds(const geometry::LevelGeometry& level, const waypoint::WaypointGraph& graph,
                    const SynthSpec& spec) {
    require(spec.rounds >= 0, Errc::invalid_argument, "synth: negative round count");
    require(spec.policy == "random_walk" || spec.policy == "rush", Errc::invalid_argument,
            "synth: unknown policy '" + spec.policy + "'");

    sim::SimConfig cfg;
    cfg.n_agents = spec.n_agents;
    cfg.round_time_limit = spec.round_time_limit;
    cfg.enable_bomb = spec.enable_bomb;

    LawOracle oracle(spec.law);

    Corpus c;
    c.map = level.name;
    c.fps = cfg.tick_rate / cfg.decision_interval;

    std::unique_ptr<sim::Policy> policy;
    if(spec.policy == "rush")
        policy = std::make_unique<sim::RushPolicy>(level, graph);
    else
        policy = std::make_unique<sim::RandomWalkPolicy>();

    for(int r = 0; r < spec.rounds; ++r) {
        sim::RoundRunResult res =
            sim::run_round(level, graph, cfg, *policy, &oracle, round_seed(spec.seed, r), r);
        c.rounds.push_back(std::move(res.round));
    }
    return c;
}

} // namespace decoy::data
