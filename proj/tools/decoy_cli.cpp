// Command-line front end. Everything goes through the public C API; this
// file only parses flags, resolves paths, prints results and writes run
// manifests.

#include "decoy/decoy.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

// Pipeline failure: already carries the printable diagnostic.
struct RunError {
    std::string message;
};

[[noreturn]] void fail(const std::string& message) { throw RunError{message}; }

void check_rc(int rc, const std::string& what) {
    if(rc < 0)
        fail(what + ": " + decoy_status_name(rc) + ": " + decoy_last_error());
}

// Relative paths resolve under $DECOY_DATA_ROOT when it is set; absolute
// paths and runs without the variable are untouched.
std::string resolve(const std::string& path) {
    if(path.empty())
        return path;
    const char* root = std::getenv("DECOY_DATA_ROOT");
    if(!root || !*root || std::filesystem::path(path).is_absolute())
        return path;
    return (std::filesystem::path(root) / path).string();
}

const char* opt_path(const std::string& resolved) {
    return resolved.empty() ? nullptr : resolved.c_str();
}

void require_readable(const std::string& path, const std::string& what) {
    if(path.empty())
        return;
    std::error_code ec;
    if(!std::filesystem::exists(path, ec))
        fail(what + ": '" + path + "' does not exist");
}

// Every artifact-producing run leaves its effective configuration beside the
// primary output, so the artifact can be regenerated without the shell
// history.
void write_manifest(const std::string& beside, const std::string& command, json options) {
    if(beside.empty())
        return;
    json manifest{{"command", command}, {"version", decoy_version()}, {"options", options}};
    std::string path = beside + ".manifest.json";
    std::ofstream out(path, std::ios::binary);
    if(!out)
        fail("cannot write manifest '" + path + "'");
    out << manifest.dump(2) << "\n";
}

void print_json(const char* text) {
    // Re-indent for the terminal; the API hands back compact JSON.
    std::cout << json::parse(text).dump(2) << "\n";
}

// Wrapper so every C string returned by the API is freed exactly once.
struct ApiString {
    char* s = nullptr;
    ~ApiString() { decoy_string_free(s); }
    const char* get() const { return s ? s : ""; }
};

// ---- subcommand option blocks ---------------------------------------------

struct WaypointsOpts {
    std::string map, out;
    double spacing = 0.0;
};

void run_waypoints(const WaypointsOpts& o) {
    std::string map = resolve(o.map), out = resolve(o.out);
    require_readable(map, "waypoints");
    decoy_graph_stats_t stats{};
    check_rc(decoy_waypoints_run(map.c_str(), o.spacing, out.c_str(), &stats), "waypoints");
    std::printf("graph: %d nodes, %d edges (%d drop) -> %s\n", stats.nodes, stats.edges,
                stats.drop_edges, out.c_str());
    std::printf("verify: removed %d edges, pruned %d nodes, built in %.2f s\n",
                stats.edges_removed, stats.nodes_pruned, stats.build_seconds);
    write_manifest(out, "waypoints",
                   json{{"map", map}, {"out", out}, {"spacing", o.spacing}});
}

struct BenchOpts {
    std::string map, graph, out;
    std::vector<int> agents = {2, 6, 10, 20};
    long long decisions = 10000;
    uint64_t seed = 1;
};

void run_bench(const BenchOpts& o) {
    std::string map = resolve(o.map), graph = resolve(o.graph), out = resolve(o.out);
    require_readable(map, "bench");
    require_readable(graph, "bench");

    std::printf("%7s %14s %10s %12s %15s %14s %11s\n", "agents", "physics_ticks", "decisions",
                "wall_time_s", "physics_time_s", "ticks_per_sec", "time_scale");
    json rows = json::array();
    for(int n : o.agents) {
        decoy_speed_report_t r{};
        check_rc(decoy_bench_run(map.c_str(), graph.c_str(), n, o.decisions, o.seed, &r),
                 "bench");
        std::printf("%7d %14lld %10lld %12.3f %15.2f %14.2f %11.2f\n", r.n_agents,
                    r.physics_ticks, r.decisions, r.wall_time, r.physics_time, r.ticks_per_sec,
                    r.time_scale);
        rows.push_back(json{{"n_agents", r.n_agents},
                            {"physics_ticks", r.physics_ticks},
                            {"decisions", r.decisions},
                            {"wall_time", r.wall_time},
                            {"physics_time", r.physics_time},
                            {"ticks_per_sec", r.ticks_per_sec},
                            {"time_scale", r.time_scale}});
    }
    if(!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if(!f)
            fail("bench: cannot write '" + out + "'");
        f << rows.dump(2) << "\n";
        write_manifest(out, "bench",
                       json{{"map", map},
                            {"graph", graph},
                            {"agents", o.agents},
                            {"decisions", o.decisions},
                            {"seed", o.seed},
                            {"out", out}});
    }
}

struct SynthOpts {
    std::string map, graph, spec, out, law_out;
};

void run_synth(const SynthOpts& o) {
    std::string map = resolve(o.map), graph = resolve(o.graph), spec = resolve(o.spec);
    std::string out = resolve(o.out), law_out = resolve(o.law_out);
    require_readable(map, "synth");
    require_readable(graph, "synth");
    require_readable(spec, "synth");
    int rounds = 0;
    check_rc(decoy_synth_run(map.c_str(), graph.c_str(), spec.c_str(), out.c_str(),
                             opt_path(law_out), &rounds),
             "synth");
    std::printf("synthesized %d rounds -> %s\n", rounds, out.c_str());
    write_manifest(out, "synth",
                   json{{"map", map},
                        {"graph", graph},
                        {"spec", spec},
                        {"out", out},
                        {"law_out", law_out}});
}

struct TrainOpts {
    std::string map, corpus, model_dir, hparams, latents;
    uint64_t seed = 1;
};

void run_train_dip(const TrainOpts& o) {
    std::string map = resolve(o.map), corpus = resolve(o.corpus);
    std::string dir = resolve(o.model_dir), hparams = resolve(o.hparams);
    require_readable(map, "train-dip");
    require_readable(corpus, "train-dip");
    require_readable(hparams, "train-dip");
    ApiString metrics;
    check_rc(decoy_train_dip_run(map.c_str(), corpus.c_str(), dir.c_str(), opt_path(hparams),
                                 o.seed, &metrics.s),
             "train-dip");
    print_json(metrics.get());
    write_manifest((std::filesystem::path(dir) / "dip").string(), "train-dip",
                   json{{"map", map},
                        {"corpus", corpus},
                        {"model_dir", dir},
                        {"hparams", hparams},
                        {"seed", o.seed}});
}

void run_train_dog(const TrainOpts& o) {
    std::string map = resolve(o.map), corpus = resolve(o.corpus);
    std::string dir = resolve(o.model_dir), hparams = resolve(o.hparams);
    std::string latents = resolve(o.latents);
    require_readable(map, "train-dog");
    require_readable(corpus, "train-dog");
    require_readable(hparams, "train-dog");
    ApiString metrics;
    check_rc(decoy_train_dog_run(map.c_str(), corpus.c_str(), dir.c_str(), opt_path(hparams),
                                 o.seed, opt_path(latents), &metrics.s),
             "train-dog");
    print_json(metrics.get());
    write_manifest((std::filesystem::path(dir) / "dog").string(), "train-dog",
                   json{{"map", map},
                        {"corpus", corpus},
                        {"model_dir", dir},
                        {"hparams", hparams},
                        {"latents", latents},
                        {"seed", o.seed}});
}

struct EvalModelsOpts {
    std::string map, corpus, model_dir, out;
    uint64_t seed = 1;
};

void run_eval_models(const EvalModelsOpts& o) {
    std::string map = resolve(o.map), corpus = resolve(o.corpus);
    std::string dir = resolve(o.model_dir), out = resolve(o.out);
    require_readable(map, "eval-models");
    require_readable(corpus, "eval-models");
    require_readable(dir, "eval-models");
    ApiString metrics;
    check_rc(decoy_eval_models_run(map.c_str(), corpus.c_str(), dir.c_str(), o.seed, &metrics.s),
             "eval-models");
    print_json(metrics.get());
    if(!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if(!f)
            fail("eval-models: cannot write '" + out + "'");
        f << json::parse(metrics.get()).dump(2) << "\n";
        write_manifest(out, "eval-models",
                       json{{"map", map},
                            {"corpus", corpus},
                            {"model_dir", dir},
                            {"seed", o.seed},
                            {"out", out}});
    }
}

struct SimulateOpts {
    std::string map, graph, models, law, policy = "random_walk", log, out;
    int agents = 10;
    int rounds = 1;
    uint64_t seed = 1;
    int tick_rate = 60;
    int decision_rate = 2;
    double time_limit = 155.0;
    bool no_bomb = false;
};

void run_simulate(const SimulateOpts& o) {
    std::string map = resolve(o.map), graph = resolve(o.graph), models = resolve(o.models);
    std::string law = resolve(o.law), log = resolve(o.log), out = resolve(o.out);
    require_readable(map, "simulate");
    require_readable(graph, "simulate");
    require_readable(models, "simulate");
    require_readable(law, "simulate");
    if(o.decision_rate <= 0 || o.tick_rate % o.decision_rate != 0)
        fail("simulate: --decision-rate must be positive and divide --tick-rate");

    decoy_simulate_params_t p{};
    p.map_path = map.c_str();
    p.graph_path = graph.c_str();
    p.model_dir = opt_path(models);
    p.law_path = opt_path(law);
    p.policy = o.policy.c_str();
    p.n_agents = o.agents;
    p.rounds = o.rounds;
    p.seed = o.seed;
    p.tick_rate = o.tick_rate;
    p.decision_interval = o.tick_rate / o.decision_rate;
    p.round_time_limit = o.time_limit;
    p.enable_bomb = o.no_bomb ? 0 : 1;
    p.log_out = opt_path(log);
    p.corpus_out = opt_path(out);

    ApiString summary;
    check_rc(decoy_simulate_run(&p, &summary.s), "simulate");
    print_json(summary.get());

    json options{{"map", map},           {"graph", graph},
                 {"models", models},     {"law", law},
                 {"policy", o.policy},   {"agents", o.agents},
                 {"rounds", o.rounds},   {"seed", o.seed},
                 {"tick_rate", o.tick_rate}, {"decision_rate", o.decision_rate},
                 {"time_limit", o.time_limit}, {"bomb", !o.no_bomb},
                 {"log", log},           {"out", out}};
    write_manifest(out, "simulate", options);
    if(out.empty())
        write_manifest(log, "simulate", options);
}

struct ReplayOpts {
    std::string map, graph, corpus, models, law, out;
    bool full = false;
    uint64_t seed = 1;
};

void run_replay(const ReplayOpts& o) {
    std::string map = resolve(o.map), graph = resolve(o.graph), corpus = resolve(o.corpus);
    std::string models = resolve(o.models), law = resolve(o.law), out = resolve(o.out);
    require_readable(map, "replay");
    require_readable(graph, "replay");
    require_readable(corpus, "replay");
    require_readable(models, "replay");
    require_readable(law, "replay");

    decoy_replay_params_t p{};
    p.map_path = map.c_str();
    p.graph_path = graph.c_str();
    p.corpus_path = corpus.c_str();
    p.model_dir = opt_path(models);
    p.law_path = opt_path(law);
    p.full_mechanics = o.full ? 1 : 0;
    p.seed = o.seed;
    p.corpus_out = out.c_str();

    ApiString summary;
    check_rc(decoy_replay_run(&p, &summary.s), "replay");
    print_json(summary.get());
    write_manifest(out, "replay",
                   json{{"map", map},
                        {"graph", graph},
                        {"corpus", corpus},
                        {"models", models},
                        {"law", law},
                        {"full", o.full},
                        {"seed", o.seed},
                        {"out", out}});
}

struct EvalOpts {
    std::string map, original, replayed, report, heat_dir;
    double cell = 1.0;
    bool use_3d = false;
};

void run_eval(const EvalOpts& o) {
    std::string map = resolve(o.map), original = resolve(o.original);
    std::string replayed = resolve(o.replayed), report = resolve(o.report);
    std::string heat_dir = resolve(o.heat_dir);
    require_readable(map, "eval");
    require_readable(original, "eval");
    require_readable(replayed, "eval");

    ApiString text;
    check_rc(decoy_eval_run(map.c_str(), original.c_str(), replayed.c_str(), o.cell,
                            o.use_3d ? 1 : 0, opt_path(report), opt_path(heat_dir), &text.s),
             "eval");
    print_json(text.get());
    write_manifest(report, "eval",
                   json{{"map", map},
                        {"original", original},
                        {"replayed", replayed},
                        {"cell", o.cell},
                        {"use_3d", o.use_3d},
                        {"report", report},
                        {"heat_dir", heat_dir}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decoy: waypoint-graph combat simulator with learned damage models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", decoy_version());
    app.set_config("--config", "", "Read defaults from a TOML config file; flags win");

    WaypointsOpts wp;
    CLI::App* c = app.add_subcommand("waypoints", "Build and save the waypoint graph for a map");
    c->add_option("--map", wp.map, "Map file")->required();
    c->add_option("--out", wp.out, "Graph output path")->required();
    c->add_option("--spacing", wp.spacing, "Lattice spacing in meters (0 = default)");
    c->callback([&wp] { run_waypoints(wp); });

    SimulateOpts sim;
    c = app.add_subcommand("simulate", "Run scripted rounds and record them");
    c->add_option("--map", sim.map, "Map file")->required();
    c->add_option("--graph", sim.graph, "Waypoint graph")->required();
    c->add_option("--models", sim.models, "Damage-model checkpoint directory");
    c->add_option("--law", sim.law, "Rule-based damage law file (instead of --models)");
    c->add_option("--policy", sim.policy, "Agent policy: random_walk or rush");
    c->add_option("--agents", sim.agents, "Agent count");
    c->add_option("--rounds", sim.rounds, "Rounds to run");
    c->add_option("--seed", sim.seed, "Base seed");
    c->add_option("--tick-rate", sim.tick_rate, "Physics ticks per second");
    c->add_option("--decision-rate", sim.decision_rate, "Damage resolutions per second");
    c->add_option("--time-limit", sim.time_limit, "Round time limit, seconds");
    c->add_flag("--no-bomb", sim.no_bomb, "Disable the bomb objective");
    c->add_option("--log", sim.log, "Event-log output for the first round");
    c->add_option("--out", sim.out, "Corpus output path");
    c->callback([&sim] { run_simulate(sim); });

    BenchOpts bench;
    c = app.add_subcommand("bench", "Measure simulation throughput (random-walk agents)");
    c->add_option("--map", bench.map, "Map file")->required();
    c->add_option("--graph", bench.graph, "Waypoint graph")->required();
    c->add_option("--agents", bench.agents, "Agent counts to sweep")->delimiter(',');
    c->add_option("--decisions", bench.decisions, "Agent decisions per run");
    c->add_option("--seed", bench.seed, "Seed");
    c->add_option("--out", bench.out, "Write rows as JSON here too");
    c->callback([&bench] { run_bench(bench); });

    TrainOpts tdip;
    c = app.add_subcommand("train-dip", "Train the damage-indicator classifier");
    c->add_option("--map", tdip.map, "Map file")->required();
    c->add_option("--corpus", tdip.corpus, "Recorded round corpus")->required();
    c->add_option("--out-dir", tdip.model_dir, "Checkpoint directory")->required();
    c->add_option("--hparams", tdip.hparams, "Hyperparameter JSON file");
    c->add_option("--seed", tdip.seed, "Split/init seed");
    c->callback([&tdip] { run_train_dip(tdip); });

    TrainOpts tdog;
    c = app.add_subcommand("train-dog", "Train the damage-outcome generator");
    c->add_option("--map", tdog.map, "Map file")->required();
    c->add_option("--corpus", tdog.corpus, "Recorded round corpus")->required();
    c->add_option("--out-dir", tdog.model_dir, "Checkpoint directory")->required();
    c->add_option("--hparams", tdog.hparams, "Hyperparameter JSON file");
    c->add_option("--latents", tdog.latents, "Export validation posterior means as CSV");
    c->add_option("--seed", tdog.seed, "Split/init seed");
    c->callback([&tdog] { run_train_dog(tdog); });

    EvalModelsOpts em;
    c = app.add_subcommand("eval-models", "Evaluate a checkpoint on a corpus's held-out split");
    c->add_option("--map", em.map, "Map file")->required();
    c->add_option("--corpus", em.corpus, "Recorded round corpus")->required();
    c->add_option("--models", em.model_dir, "Checkpoint directory")->required();
    c->add_option("--seed", em.seed, "Split seed (must match training)");
    c->add_option("--out", em.out, "Write metrics JSON here too");
    c->callback([&em] { run_eval_models(em); });

    ReplayOpts rp;
    c = app.add_subcommand("replay", "Re-drive recorded rounds through the simulator");
    c->add_option("--map", rp.map, "Map file")->required();
    c->add_option("--graph", rp.graph, "Waypoint graph")->required();
    c->add_option("--corpus", rp.corpus, "Rounds to replay")->required();
    c->add_option("--models", rp.models, "Damage-model checkpoint (full mode)");
    c->add_option("--law", rp.law, "Rule-based damage law (full mode, instead of --models)");
    c->add_flag("--full", rp.full, "Full mechanics instead of movement-only");
    c->add_option("--seed", rp.seed, "Base seed");
    c->add_option("--out", rp.out, "Replayed corpus output path")->required();
    c->callback([&rp] { run_replay(rp); });

    EvalOpts ev;
    c = app.add_subcommand("eval", "Compare replayed rounds against their originals");
    c->add_option("--map", ev.map, "Map file")->required();
    c->add_option("--original", ev.original, "Original corpus")->required();
    c->add_option("--replayed", ev.replayed, "Replayed corpus")->required();
    c->add_option("--cell", ev.cell, "Heatmap cell size, meters");
    c->add_flag("--use-3d", ev.use_3d, "Include elevation in trajectory metrics");
    c->add_option("--report", ev.report, "Report JSON output path");
    c->add_option("--heat-dir", ev.heat_dir, "Directory for occupancy grids");
    c->callback([&ev] { run_eval(ev); });

    SynthOpts sy;
    c = app.add_subcommand("synth", "Generate a synthetic corpus from a recipe file");
    c->add_option("--map", sy.map, "Map file")->required();
    c->add_option("--graph", sy.graph, "Waypoint graph")->required();
    c->add_option("--spec", sy.spec, "Synthesis recipe JSON")->required();
    c->add_option("--out", sy.out, "Corpus output path")->required();
    c->add_option("--law-out", sy.law_out, "Save the ground-truth law here");
    c->callback([&sy] { run_synth(sy); });

    if(argc <= 1) {
        std::cerr << app.help();
        return 2;
    }
    try {
        app.parse(argc, argv);
    } catch(const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch(const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch(const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch(const RunError& e) {
        std::cerr << "error: " << e.message << "\n";
        return 1;
    }
    return 0;
}
