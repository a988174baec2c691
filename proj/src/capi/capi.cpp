// C ABI over the simulator core. Every entry point translates exceptions
// into negative status codes and keeps the message in thread-local storage;
// no exception may cross the extern-C boundary.

#include "decoy/decoy.h"

#include "data/law.hpp"
#include "data/round.hpp"
#include "data/synth.hpp"
#include "geometry/level.hpp"
#include "metrics/evaluate.hpp"
#include "metrics/similarity.hpp"
#include "models/checkpoint.hpp"
#include "models/oracle.hpp"
#include "replay/runner.hpp"
#include "sim/bench.hpp"
#include "sim/simulate.hpp"
#include "waypoint/builder.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>

using namespace decoy;

// ---- handle definitions ----------------------------------------------------

struct decoy_level {
    geometry::LevelGeometry level;
};

struct decoy_graph {
    waypoint::WaypointGraph graph;
};

struct decoy_models {
    models::ModelBundle bundle;
};

// Owns copies of everything the engine references, so the source handles may
// be closed while the environment lives.
struct decoy_env {
    geometry::LevelGeometry level;
    waypoint::WaypointGraph graph;
    sim::SimConfig cfg;
    std::optional<models::ModelOracle> oracle;
    std::unique_ptr<sim::Engine> eng;
};

// ---- error plumbing --------------------------------------------------------

namespace {

std::string& tl_error() {
    thread_local std::string msg;
    return msg;
}

int code_of(const Error& e) { return -int(e.code()); }

// Runs the body and converts anything thrown into a status code.
template <typename F> int guarded(F&& body) noexcept {
    try {
        body();
        tl_error().clear();
        return DECOY_OK;
    } catch(const Error& e) {
        tl_error() = e.what();
        return code_of(e);
    } catch(const std::bad_alloc&) {
        tl_error() = "out of memory";
        return DECOY_E_INTERNAL;
    } catch(const std::exception& e) {
        tl_error() = e.what();
        return DECOY_E_INTERNAL;
    } catch(...) {
        tl_error() = "unknown exception";
        return DECOY_E_INTERNAL;
    }
}

// Same, for calls that return a non-negative value directly.
template <typename F> int guarded_value(F&& body) noexcept {
    int value = 0;
    int rc = guarded([&] { value = body(); });
    return rc == DECOY_OK ? value : rc;
}

template <typename T> void check_handle(const T* p, const char* what) {
    if(!p)
        raise(Errc::invalid_argument, std::string(what) + ": null handle");
}

void check_out(const void* p, const char* what) {
    if(!p)
        raise(Errc::invalid_argument, std::string(what) + ": null output pointer");
}

std::string require_path(const char* p, const char* what) {
    if(!p || !*p)
        raise(Errc::invalid_argument, std::string(what) + ": missing path");
    return p;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if(!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void give_string(char** out, const std::string& s) {
    if(out)
        *out = dup_string(s);
}

void copy_weapon(char (&dst)[32], const std::string& src, const char* what) {
    if(src.size() + 1 > sizeof dst)
        raise(Errc::invalid_argument, std::string(what) + ": weapon name too long");
    std::memcpy(dst, src.c_str(), src.size() + 1);
}

// ---- conversions -----------------------------------------------------------

decoy_agent_state_t to_c_agent(const sim::AgentState& a, int ready) {
    decoy_agent_state_t out{};
    out.id = a.id;
    out.team = a.team == Team::T ? DECOY_TEAM_T : DECOY_TEAM_CT;
    out.pos[0] = a.pos.x;
    out.pos[1] = a.pos.y;
    out.pos[2] = a.pos.z;
    out.view = a.view;
    out.health = a.health;
    out.alive = a.alive ? 1 : 0;
    out.node = a.node;
    out.ready = ready;
    return out;
}

sim::AgentAction from_c_action(const decoy_action_t& act) {
    switch(act.kind) {
    case DECOY_ACTION_MOVE:
        if(act.dir < 0 || act.dir >= waypoint::COMPASS_COUNT)
            raise(Errc::invalid_argument,
                  "step: compass direction " + std::to_string(act.dir) + " out of range");
        return sim::make_move(waypoint::CompassDir(act.dir));
    case DECOY_ACTION_STOP:
        return sim::make_stop();
    case DECOY_ACTION_SET_VIEW:
        return sim::make_set_view(act.view);
    default:
        raise(Errc::invalid_argument,
              "step: unknown action kind " + std::to_string(act.kind));
    }
}

sim::SimConfig from_c_config(const decoy_sim_config_t* cfg) {
    sim::SimConfig out;
    if(!cfg)
        return out;
    if(cfg->n_agents < 2 || cfg->n_agents > DECOY_MAX_AGENTS)
        raise(Errc::invalid_argument, "env: n_agents must be in [2, " +
                                          std::to_string(DECOY_MAX_AGENTS) + "], got " +
                                          std::to_string(cfg->n_agents));
    if(cfg->tick_rate <= 0 || cfg->decision_interval <= 0 ||
       cfg->tick_rate % cfg->decision_interval != 0)
        raise(Errc::invalid_argument,
              "env: tick_rate and decision_interval must be positive with "
              "decision_interval dividing tick_rate");
    if(!(cfg->round_time_limit > 0.0))
        raise(Errc::invalid_argument, "env: round_time_limit must be positive");
    if(cfg->armor < 0 || cfg->armor > 100)
        raise(Errc::invalid_argument, "env: armor must be in [0, 100]");
    out.n_agents = cfg->n_agents;
    out.tick_rate = cfg->tick_rate;
    out.decision_interval = cfg->decision_interval;
    out.round_time_limit = cfg->round_time_limit;
    out.enable_damage = cfg->enable_damage != 0;
    out.enable_bomb = cfg->enable_bomb != 0;
    out.t_weapon = cfg->t_weapon;
    out.ct_weapon = cfg->ct_weapon;
    out.armor = cfg->armor;
    out.helmet = cfg->helmet != 0;
    return out;
}

// Builds the damage source for one-shot runs: a trained checkpoint or a
// rule-based law, never both.
std::unique_ptr<sim::DamageOracle> open_oracle(const char* model_dir, const char* law_path,
                                               const std::string& map) {
    if(model_dir && law_path)
        raise(Errc::invalid_argument,
              "both a model checkpoint and a damage law given; pick one damage source");
    if(model_dir)
        return std::make_unique<models::ModelOracle>(models::load_models(model_dir), map);
    if(law_path)
        return std::make_unique<data::LawOracle>(data::load_law(law_path));
    return nullptr;
}

std::unique_ptr<sim::Policy> make_policy(const char* name, const geometry::LevelGeometry& level,
                                         const waypoint::WaypointGraph& graph) {
    std::string n = name ? name : "random_walk";
    if(n == "random_walk")
        return std::make_unique<sim::RandomWalkPolicy>();
    if(n == "rush")
        return std::make_unique<sim::RushPolicy>(level, graph);
    raise(Errc::invalid_argument, "unknown policy '" + n + "' (random_walk, rush)");
}

// Corpus rounds for training/eval with the map checked against the level, so
// feature encoding cannot silently run on mismatched geometry.
data::Corpus load_corpus_for(const geometry::LevelGeometry& level, const std::string& path) {
    data::Corpus c = data::parse_rounds(path);
    if(c.rounds.empty())
        raise(Errc::validation, path + ": corpus holds no valid rounds");
    if(c.map != level.name)
        raise(Errc::validation, path + ": corpus was recorded on map '" + c.map +
                                    "' but the level is '" + level.name + "'");
    return c;
}

json binary_metrics_json(const models::BinaryMetrics& m, double threshold) {
    return json{{"accuracy", m.accuracy}, {"precision", m.precision}, {"recall", m.recall},
                {"f1", m.f1},             {"auc", m.auc},             {"ap", m.ap},
                {"threshold", threshold}, {"tp", m.tp},               {"fp", m.fp},
                {"tn", m.tn},             {"fn", m.fn}};
}

json dog_metrics_json(const models::DogMetrics& m) {
    return json{{"mae", m.mae},
                {"r2", m.r2},
                {"hitgroup_accuracy", m.hitgroup_accuracy},
                {"mean_kl", m.mean_kl},
                {"rows", m.n}};
}

} // namespace

// ---- version / errors ------------------------------------------------------

extern "C" {

const char* decoy_version(void) { return "0.1.0"; }

const char* decoy_last_error(void) { return tl_error().c_str(); }

const char* decoy_status_name(int status) {
    switch(status) {
    case DECOY_OK:
        return "ok";
    case DECOY_E_INVALID_ARGUMENT:
        return "invalid_argument";
    case DECOY_E_IO:
        return "io";
    case DECOY_E_PARSE:
        return "parse";
    case DECOY_E_VALIDATION:
        return "validation";
    case DECOY_E_CONTRACT:
        return "contract";
    case DECOY_E_MODEL:
        return "model";
    case DECOY_E_INTERNAL:
        return "internal";
    default:
        return "unknown";
    }
}

void decoy_string_free(char* s) { std::free(s); }

// ---- levels ----------------------------------------------------------------

int decoy_level_open(const char* path, decoy_level_t** out) {
    return guarded([&] {
        check_out(out, "level_open");
        auto handle = std::make_unique<decoy_level>();
        handle->level = geometry::load_level(require_path(path, "level_open"));
        *out = handle.release();
    });
}

void decoy_level_close(decoy_level_t* level) { delete level; }

const char* decoy_level_name(const decoy_level_t* level) {
    return level ? level->level.name.c_str() : "";
}

int decoy_level_bounds(const decoy_level_t* level, double lo[3], double hi[3]) {
    return guarded([&] {
        check_handle(level, "level_bounds");
        check_out(lo, "level_bounds");
        check_out(hi, "level_bounds");
        geometry::Aabb b = geometry::level_bounds(level->level);
        lo[0] = b.lo.x;
        lo[1] = b.lo.y;
        lo[2] = b.lo.z;
        hi[0] = b.hi.x;
        hi[1] = b.hi.y;
        hi[2] = b.hi.z;
    });
}

// ---- waypoint graphs -------------------------------------------------------

int decoy_graph_build(const decoy_level_t* level, double spacing, decoy_graph_t** out) {
    return guarded([&] {
        check_handle(level, "graph_build");
        check_out(out, "graph_build");
        waypoint::GraphBuildParams params;
        if(spacing > 0.0)
            params.spacing = spacing;
        auto handle = std::make_unique<decoy_graph>();
        handle->graph = waypoint::build_graph(level->level, params);
        *out = handle.release();
    });
}

int decoy_graph_open(const char* path, decoy_graph_t** out) {
    return guarded([&] {
        check_out(out, "graph_open");
        auto handle = std::make_unique<decoy_graph>();
        handle->graph = waypoint::load_graph(require_path(path, "graph_open"));
        *out = handle.release();
    });
}

int decoy_graph_save(const decoy_graph_t* graph, const char* path) {
    return guarded([&] {
        check_handle(graph, "graph_save");
        waypoint::save_graph(require_path(path, "graph_save"), graph->graph);
    });
}

void decoy_graph_close(decoy_graph_t* graph) { delete graph; }

int decoy_graph_node_count(const decoy_graph_t* graph) {
    return guarded_value([&] {
        check_handle(graph, "graph_node_count");
        return graph->graph.node_count();
    });
}

int decoy_graph_edge_count(const decoy_graph_t* graph) {
    return guarded_value([&] {
        check_handle(graph, "graph_edge_count");
        return graph->graph.edge_count();
    });
}

int decoy_graph_node_pos(const decoy_graph_t* graph, int node, double pos[3]) {
    return guarded([&] {
        check_handle(graph, "graph_node_pos");
        check_out(pos, "graph_node_pos");
        graph->graph.check_node(node, "graph_node_pos");
        const Vec3& p = graph->graph.nodes[std::size_t(node)].pos;
        pos[0] = p.x;
        pos[1] = p.y;
        pos[2] = p.z;
    });
}

int decoy_graph_nearest(const decoy_graph_t* graph, double x, double y, double z) {
    return guarded_value([&] {
        check_handle(graph, "graph_nearest");
        return waypoint::nearest_waypoint(graph->graph, Vec3{x, y, z});
    });
}

// ---- damage-model checkpoints ----------------------------------------------

int decoy_models_open(const char* dir, decoy_models_t** out) {
    return guarded([&] {
        check_out(out, "models_open");
        auto handle = std::make_unique<decoy_models>();
        handle->bundle = models::load_models(require_path(dir, "models_open"));
        *out = handle.release();
    });
}

void decoy_models_close(decoy_models_t* models) { delete models; }

// ---- environment -----------------------------------------------------------

void decoy_sim_config_init(decoy_sim_config_t* cfg) {
    if(!cfg)
        return;
    std::memset(cfg, 0, sizeof *cfg);
    sim::SimConfig defaults;
    cfg->n_agents = defaults.n_agents;
    cfg->tick_rate = defaults.tick_rate;
    cfg->decision_interval = defaults.decision_interval;
    cfg->round_time_limit = defaults.round_time_limit;
    cfg->enable_damage = defaults.enable_damage ? 1 : 0;
    cfg->enable_bomb = defaults.enable_bomb ? 1 : 0;
    copy_weapon(cfg->t_weapon, defaults.t_weapon, "sim_config_init");
    copy_weapon(cfg->ct_weapon, defaults.ct_weapon, "sim_config_init");
    cfg->armor = defaults.armor;
    cfg->helmet = defaults.helmet ? 1 : 0;
}

int decoy_env_create(const decoy_level_t* level, const decoy_graph_t* graph,
                     const decoy_sim_config_t* cfg, const decoy_models_t* models, uint64_t seed,
                     decoy_env_t** out) {
    return guarded([&] {
        check_handle(level, "env_create");
        check_handle(graph, "env_create");
        check_out(out, "env_create");
        auto env = std::make_unique<decoy_env>();
        env->level = level->level;
        env->graph = graph->graph;
        env->cfg = from_c_config(cfg);
        if(models) {
            // Fails here, not mid-round, when the map or the configured
            // weapons fall outside the model's vocabulary.
            env->oracle.emplace(models->bundle, env->level.name);
            models->bundle.schema.weapon_index(env->cfg.t_weapon);
            models->bundle.schema.weapon_index(env->cfg.ct_weapon);
        }
        env->eng = std::make_unique<sim::Engine>(env->level, env->graph, env->cfg,
                                                 env->oracle ? &*env->oracle : nullptr, seed);
        *out = env.release();
    });
}

void decoy_env_close(decoy_env_t* env) { delete env; }

int decoy_env_reset(decoy_env_t* env, uint64_t seed) {
    return guarded([&] {
        check_handle(env, "env_reset");
        env->eng->reset(seed);
    });
}

int decoy_env_agent_count(const decoy_env_t* env) {
    return guarded_value([&] {
        check_handle(env, "env_agent_count");
        return int(env->eng->agents().size());
    });
}

long long decoy_env_tick(const decoy_env_t* env) {
    long long value = 0;
    int rc = guarded([&] {
        check_handle(env, "env_tick");
        value = env->eng->tick();
    });
    return rc == DECOY_OK ? value : rc;
}

int decoy_env_ready(const decoy_env_t* env, int* ids, int cap) {
    return guarded_value([&] {
        check_handle(env, "env_ready");
        std::vector<int> ready = env->eng->ready_agents();
        int n = int(ready.size());
        for(int i = 0; i < n && i < cap; ++i)
            ids[i] = ready[std::size_t(i)];
        return n;
    });
}

int decoy_env_step(decoy_env_t* env, const decoy_action_t* actions, int n_actions,
                   decoy_step_t* out) {
    return guarded([&] {
        check_handle(env, "env_step");
        check_out(out, "env_step");
        if(n_actions > 0)
            check_out(actions, "env_step");
        std::map<int, sim::AgentAction> acts;
        for(int i = 0; i < n_actions; ++i) {
            const decoy_action_t& a = actions[i];
            if(acts.count(a.agent_id))
                raise(Errc::invalid_argument,
                      "step: duplicate action for agent " + std::to_string(a.agent_id));
            acts[a.agent_id] = from_c_action(a);
        }
        sim::StepResult res = env->eng->step(acts);

        std::memset(out, 0, sizeof *out);
        out->done = res.done ? 1 : 0;
        out->tick = env->eng->tick();
        out->clock_seconds = env->eng->clock();
        out->n_ready = int(res.ready.size());
        for(std::size_t i = 0; i < res.ready.size() && i < DECOY_MAX_AGENTS; ++i)
            out->ready[i] = res.ready[i];
        out->n_invalid = int(res.invalid.size());
        for(std::size_t i = 0; i < res.invalid.size() && i < DECOY_MAX_AGENTS; ++i)
            out->invalid[i] = res.invalid[i];
        for(const auto& [id, r] : res.rewards)
            if(id >= 0 && id < DECOY_MAX_AGENTS)
                out->rewards[id] = r;
    });
}

int decoy_env_observe(const decoy_env_t* env, int agent_id, decoy_observation_t* out) {
    return guarded([&] {
        check_handle(env, "env_observe");
        check_out(out, "env_observe");
        sim::Observation obs = env->eng->observe(agent_id);
        std::vector<int> ready = env->eng->ready_agents();
        auto is_ready = [&](int id) {
            return std::binary_search(ready.begin(), ready.end(), id) ? 1 : 0;
        };

        std::memset(out, 0, sizeof *out);
        out->self = to_c_agent(obs.self, obs.ready ? 1 : 0);
        out->n_visible = int(obs.visible.size());
        for(std::size_t i = 0; i < obs.visible.size() && i < DECOY_MAX_AGENTS; ++i)
            out->visible[i] = to_c_agent(obs.visible[i], is_ready(obs.visible[i].id));
        out->bomb_visible = obs.bomb_visible ? 1 : 0;
        out->bomb_status = int(obs.bomb.status);
        out->bomb_carrier = obs.bomb.carrier;
        out->bomb_pos[0] = obs.bomb.pos.x;
        out->bomb_pos[1] = obs.bomb.pos.y;
        out->bomb_pos[2] = obs.bomb.pos.z;
    });
}

int decoy_env_done(const decoy_env_t* env) {
    return guarded_value([&] {
        check_handle(env, "env_done");
        return env->eng->done() ? 1 : 0;
    });
}

int decoy_env_outcome(const decoy_env_t* env, decoy_outcome_t* out) {
    return guarded([&] {
        check_handle(env, "env_outcome");
        check_out(out, "env_outcome");
        const auto& outcome = env->eng->outcome();
        if(!outcome)
            raise(Errc::contract, "outcome: round still running");
        out->winner = outcome->winner == Team::T ? DECOY_TEAM_T : DECOY_TEAM_CT;
        out->reason = int(outcome->reason);
        out->end_tick = outcome->end_tick;
    });
}

int decoy_env_events(const decoy_env_t* env, char** out_text) {
    return guarded([&] {
        check_handle(env, "env_events");
        check_out(out_text, "env_events");
        *out_text = dup_string(sim::serialize_events(env->eng->events()));
    });
}

// ---- one-shot pipeline entry points ----------------------------------------

int decoy_waypoints_run(const char* map_path, double spacing, const char* graph_out,
                        decoy_graph_stats_t* stats) {
    return guarded([&] {
        geometry::LevelGeometry level = geometry::load_level(require_path(map_path, "waypoints"));
        waypoint::GraphBuildParams params;
        if(spacing > 0.0)
            params.spacing = spacing;

        auto t0 = std::chrono::steady_clock::now();
        waypoint::BuildReport report;
        waypoint::WaypointGraph graph = waypoint::build_graph(level, params, &report);
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

        waypoint::save_graph(require_path(graph_out, "waypoints"), graph);
        if(stats) {
            stats->nodes = graph.node_count();
            stats->edges = graph.edge_count();
            stats->drop_edges = report.drop_edges;
            stats->edges_removed = report.edges_removed;
            stats->nodes_pruned = report.nodes_pruned;
            stats->build_seconds = elapsed.count();
        }
    });
}

int decoy_bench_run(const char* map_path, const char* graph_path, int n_agents,
                    long long decisions, uint64_t seed, decoy_speed_report_t* out) {
    return guarded([&] {
        check_out(out, "bench");
        geometry::LevelGeometry level = geometry::load_level(require_path(map_path, "bench"));
        waypoint::WaypointGraph graph = waypoint::load_graph(require_path(graph_path, "bench"));
        sim::SpeedReport r = sim::run_benchmark(level, graph, n_agents, decisions, seed);
        out->n_agents = r.n_agents;
        out->physics_ticks = r.physics_ticks;
        out->decisions = r.decisions;
        out->wall_time = r.wall_time;
        out->physics_time = r.physics_time;
        out->ticks_per_sec = r.ticks_per_sec;
        out->time_scale = r.time_scale;
    });
}

int decoy_synth_run(const char* map_path, const char* graph_path, const char* spec_path,
                    const char* corpus_out, const char* law_out, int* rounds_out) {
    return guarded([&] {
        geometry::LevelGeometry level = geometry::load_level(require_path(map_path, "synth"));
        waypoint::WaypointGraph graph = waypoint::load_graph(require_path(graph_path, "synth"));
        std::string spec_file = require_path(spec_path, "synth");
        data::SynthSpec spec = data::synth_spec_from_json(load_json(spec_file), spec_file);

        data::Corpus corpus = data::synth_rounds(level, graph, spec);
        data::save_corpus(require_path(corpus_out, "synth"), corpus);
        if(law_out)
            data::save_law(law_out, spec.law);
        if(rounds_out)
            *rounds_out = int(corpus.rounds.size());
    });
}

int decoy_train_dip_run(const char* map_path, const char* corpus_path, const char* model_dir,
                        const char* hparams_path, uint64_t seed, char** metrics_json) {
    return guarded([&] {
        geometry::LevelGeometry level = geometry::load_level(require_path(map_path, "train-dip"));
        data::Corpus corpus = load_corpus_for(level, require_path(corpus_path, "train-dip"));

        models::DipHparams hp;
        if(hparams_path)
            hp = models::dip_hparams_from_json(load_json(hparams_path), hparams_path);

        models::FeatureSchema schema =
            models::make_schema({level.name}, geometry::level_bounds(level));
        data::Split split = data::split_rounds(corpus.rounds, seed);
        std::vector<models::DipRow> train = models::dip_rows(schema, split.train);
        std::vector<models::DipRow> val = models::dip_rows(schema, split.val);

        models::DipTrainResult res = models::dip_train(train, val, hp, seed);
        models::save_dip_checkpoint(require_path(model_dir, "train-dip"), schema, res.model);

        json j = binary_metrics_json(res.val, res.model.threshold);
        j["train_rows"] = train.size();
        j["val_rows"] = val.size();
        j["final_epoch_loss"] = res.epoch_loss.empty() ? 0.0 : res.epoch_loss.back();
        give_string(metrics_json, j.dump());
    });
}

int decoy_train_dog_run(const char* map_path, const char* corpus_path, const char* model_dir,
                        const char* hparams_path, uint64_t seed, const char* latents_out,
                        char** metrics_json) {
    return guarded([&] {
        geometry::LevelGeometry level = geometry::load_level(require_path(map_path, "train-dog"));
        data::Corpus corpus = load_corpus_for(level, require_path(corpus_path, "train-dog"));

        models::DogHparams hp;
        if(hparams_path)
            hp = models::dog_hparams_from_json(load_json(hparams_path), hparams_path);

        models::FeatureSchema schema =
            models::make_schema({level.name}, geometry::level_bounds(level));
        data::Split split = data::split_rounds(corpus.rounds, seed);
        std::vector<models::DogRow> train = models::dog_rows(schema, split.train);
        std::vector<models::DogRow> val = models::dog_rows(schema, split.val);

        models::DogTrainResult res = models::dog_train(train, val, hp, seed);
        models::save_dog_checkpoint(require_path(model_dir, "train-dog"), schema, res.model);
        if(latents_out)
            write_text_file(latents_out, models::export_latents(res.model, val));

        json j = dog_metrics_json(res.val);
        j["train_rows"] = train.size();
        j["val_rows"] = val.size();
        j["final_epoch_loss"] = res.epoch_loss.empty() ? 0.0 : res.epoch_loss.back();
        give_string(metrics_json, j.dump());
    });
}

int decoy_eval_models_run(const char* map_path, const char* corpus_path, const char* model_dir,
                          uint64_t seed, char** metrics_json) {
    return guarded([&] {
        geometry::LevelGeometry level =
            geometry::load_level(require_path(map_path, "eval-models"));
        data::Corpus corpus = load_corpus_for(level, require_path(corpus_path, "eval-models"));
        models::ModelBundle bundle = models::load_models(require_path(model_dir, "eval-models"));

        data::Split split = data::split_rounds(corpus.rounds, seed);
        const std::vector<data::Round>& held_out = split.test;

        json j;
        {
            std::vector<models::DipRow> rows = models::dip_rows(bundle.schema, held_out);
            std::vector<double> scores;
            std::vector<int> labels;
            scores.reserve(rows.size());
            for(const models::DipRow& r : rows) {
                scores.push_back(bundle.dip.score(r.x));
                labels.push_back(r.label);
            }
            models::BinaryMetrics m = models::binary_metrics(scores, labels, bundle.dip.threshold);
            j["dip"] = binary_metrics_json(m, bundle.dip.threshold);
            j["dip"]["rows"] = rows.size();
        }
        {
            std::vector<models::DogRow> rows = models::dog_rows(bundle.schema, held_out);
            j["dog"] = dog_metrics_json(models::dog_eval(bundle.dog, rows));

            // Distribution fidelity: one generated outcome per held-out row,
            // compared per hit group against the true outcomes.
            Rng rng(seed);
            std::map<std::string, std::vector<double>> true_d, gen_d;
            for(const models::DogRow& r : rows) {
                true_d[hitgroup_name(r.group)].push_back(r.damage);
                models::DogSampleOut s = models::dog_generate(bundle.dog, r.x, rng);
                gen_d[hitgroup_name(s.group)].push_back(double(s.damage));
            }
            json wd = json::object();
            std::vector<double> all_true, all_gen;
            for(const auto& [group, xs] : true_d) {
                all_true.insert(all_true.end(), xs.begin(), xs.end());
                auto it = gen_d.find(group);
                if(it == gen_d.end())
                    continue;
                wd[group] = metrics::wasserstein1d(xs, it->second);
            }
            for(const auto& [group, xs] : gen_d)
                all_gen.insert(all_gen.end(), xs.begin(), xs.end());
            if(!all_true.empty() && !all_gen.empty())
                j["dog"]["wd_damage_overall"] = metrics::wasserstein1d(all_true, all_gen);
            j["dog"]["wd_damage_by_group"] = wd;
        }
        j["held_out_rounds"] = held_out.size();
        give_string(metrics_json, j.dump());
    });
}

int decoy_simulate_run(const decoy_simulate_params_t* params, char** summary_json) {
    return guarded([&] {
        check_handle(params, "simulate");
        geometry::LevelGeometry level =
            geometry::load_level(require_path(params->map_path, "simulate"));
        waypoint::WaypointGraph graph =
            waypoint::load_graph(require_path(params->graph_path, "simulate"));
        std::unique_ptr<sim::DamageOracle> oracle =
            open_oracle(params->model_dir, params->law_path, level.name);
        std::unique_ptr<sim::Policy> policy = make_policy(params->policy, level, graph);

        sim::SimConfig cfg;
        if(params->n_agents > 0)
            cfg.n_agents = params->n_agents;
        if(params->tick_rate > 0)
            cfg.tick_rate = params->tick_rate;
        if(params->decision_interval > 0)
            cfg.decision_interval = params->decision_interval;
        if(cfg.tick_rate % cfg.decision_interval != 0)
            raise(Errc::invalid_argument,
                  "simulate: decision_interval must divide tick_rate");
        if(params->round_time_limit > 0.0)
            cfg.round_time_limit = params->round_time_limit;
        cfg.enable_bomb = params->enable_bomb != 0;
        cfg.enable_damage = oracle != nullptr;

        int rounds = params->rounds > 0 ? params->rounds : 1;
        data::Corpus corpus;
        corpus.map = level.name;
        corpus.fps = cfg.tick_rate / cfg.decision_interval;

        json per_round = json::array();
        for(int r = 0; r < rounds; ++r) {
            sim::RoundRunResult res = sim::run_round(level, graph, cfg, *policy, oracle.get(),
                                                     data::round_seed(params->seed, r), r);
            per_round.push_back(json{{"round_id", r},
                                     {"winner", team_name(res.outcome.winner)},
                                     {"reason", sim::outcome_reason_name(res.outcome.reason)},
                                     {"end_tick", res.outcome.end_tick},
                                     {"ticks", res.ticks},
                                     {"decisions", res.decisions},
                                     {"damage_events", res.round.damage_events.size()}});
            if(r == 0 && params->log_out)
                write_text_file(params->log_out, sim::serialize_events(res.events));
            corpus.rounds.push_back(std::move(res.round));
        }
        if(params->corpus_out)
            data::save_corpus(params->corpus_out, corpus);

        give_string(summary_json, json{{"rounds", per_round}}.dump());
    });
}

int decoy_replay_run(const decoy_replay_params_t* params, char** summary_json) {
    return guarded([&] {
        check_handle(params, "replay");
        geometry::LevelGeometry level =
            geometry::load_level(require_path(params->map_path, "replay"));
        waypoint::WaypointGraph graph =
            waypoint::load_graph(require_path(params->graph_path, "replay"));
        data::Corpus corpus = load_corpus_for(level, require_path(params->corpus_path, "replay"));

        replay::ReplayMode mode =
            params->full_mechanics ? replay::ReplayMode::Full : replay::ReplayMode::MovementOnly;
        std::unique_ptr<sim::DamageOracle> oracle =
            open_oracle(params->model_dir, params->law_path, level.name);
        if(mode == replay::ReplayMode::Full && !oracle)
            raise(Errc::invalid_argument,
                  "replay: full mechanics need a damage source (model checkpoint or law)");
        if(mode == replay::ReplayMode::MovementOnly && oracle)
            raise(Errc::invalid_argument, "replay: movement-only replay takes no damage source");

        data::Corpus replayed;
        replayed.map = corpus.map;
        replayed.fps = corpus.fps;
        int outcome_matches = 0;
        for(const data::Round& round : corpus.rounds) {
            sim::RoundRunResult res =
                replay::replay_round(level, graph, round, mode, oracle.get(),
                                     data::round_seed(params->seed, round.round_id));
            if(res.round.outcome.winner == round.outcome.winner)
                ++outcome_matches;
            replayed.rounds.push_back(std::move(res.round));
        }
        data::save_corpus(require_path(params->corpus_out, "replay"), replayed);

        give_string(summary_json,
                    json{{"rounds", replayed.rounds.size()},
                         {"mode", params->full_mechanics ? "full" : "movement_only"},
                         {"outcome_matches", outcome_matches}}
                        .dump());
    });
}

int decoy_eval_run(const char* map_path, const char* original_corpus, const char* replayed_corpus,
                   double cell, int use_3d, const char* report_out, const char* heat_dir,
                   char** report_json) {
    return guarded([&] {
        geometry::LevelGeometry level = geometry::load_level(require_path(map_path, "eval"));
        data::Corpus original = load_corpus_for(level, require_path(original_corpus, "eval"));
        data::Corpus replayed = load_corpus_for(level, require_path(replayed_corpus, "eval"));

        metrics::EvalOptions opt;
        opt.use_3d = use_3d != 0;
        if(cell > 0.0)
            opt.cell = cell;
        metrics::EvalResult res = metrics::evaluate_replay(
            original.rounds, replayed.rounds, geometry::level_bounds(level), opt);

        json j = metrics::report_to_json(res.report);
        if(report_out)
            save_json(report_out, j);
        if(heat_dir) {
            std::filesystem::path dir(heat_dir);
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            require(!ec, Errc::io,
                    std::string("cannot create heatmap directory '") + heat_dir +
                        "': " + ec.message());
            write_text_file((dir / "original.grid").string(),
                            metrics::serialize_grid(res.original_heat));
            write_text_file((dir / "replayed.grid").string(),
                            metrics::serialize_grid(res.replayed_heat));
            write_text_file((dir / "difference.grid").string(),
                            metrics::serialize_grid(res.diff));
        }
        give_string(report_json, j.dump());
    });
}

} // extern "C"
