/* decoy: deterministic round-based combat simulator with learned damage
 * models, exposed as a C ABI.
 *
 * Conventions:
 *   - Functions returning int yield DECOY_OK (0) on success or a negative
 *     DECOY_E_* status. decoy_last_error() describes the most recent failure
 *     on the calling thread.
 *   - Count/id-returning functions yield the value (>= 0) or a negative
 *     status.
 *   - Objects are opaque handles created by the _open, _build and _create
 *     functions and released by the matching _close. Handles are independent:
 *     an environment copies what it needs, so its source level/graph/model
 *     handles may be closed while it lives.
 *   - Strings returned through char** out parameters are heap-allocated;
 *     release them with decoy_string_free.
 *   - No global state beyond the per-thread error message. Handles are not
 *     thread-safe individually; distinct handles may be used concurrently.
 */

#ifndef DECOY_H
#define DECOY_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define DECOY_API __attribute__((visibility("default")))
#else
#define DECOY_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* ---- status codes ---------------------------------------------------- */

#define DECOY_OK 0
#define DECOY_E_INVALID_ARGUMENT -1 /* caller violated a documented precondition */
#define DECOY_E_IO -2               /* file missing / unreadable / unwritable */
#define DECOY_E_PARSE -3            /* malformed input text */
#define DECOY_E_VALIDATION -4       /* well-formed input breaking a semantic rule */
#define DECOY_E_CONTRACT -5         /* API misuse (wrong handle state, bad sequencing) */
#define DECOY_E_MODEL -6            /* training or inference failure */
#define DECOY_E_INTERNAL -7         /* bug trap; please report */

/* Library version, e.g. "0.1.0". Static storage, never freed. */
DECOY_API const char* decoy_version(void);

/* Message for the last failure on this thread; empty string when the last
 * call succeeded. Storage is thread-local and reused by the next failure. */
DECOY_API const char* decoy_last_error(void);

/* Short name for a status code, e.g. "validation". */
DECOY_API const char* decoy_status_name(int status);

/* Releases a string returned through a char** out parameter. NULL is ok. */
DECOY_API void decoy_string_free(char* s);

/* ---- enums shared with the simulator --------------------------------- */

#define DECOY_MAX_AGENTS 128

#define DECOY_TEAM_T 0
#define DECOY_TEAM_CT 1

/* Compass headings, clockwise from north. Even values are cardinals. */
#define DECOY_DIR_N 0
#define DECOY_DIR_NE 1
#define DECOY_DIR_E 2
#define DECOY_DIR_SE 3
#define DECOY_DIR_S 4
#define DECOY_DIR_SW 5
#define DECOY_DIR_W 6
#define DECOY_DIR_NW 7

#define DECOY_ACTION_MOVE 0
#define DECOY_ACTION_STOP 1
#define DECOY_ACTION_SET_VIEW 2

#define DECOY_BOMB_CARRIED 0
#define DECOY_BOMB_DROPPED 1
#define DECOY_BOMB_PLANTED 2
#define DECOY_BOMB_DEFUSED 3
#define DECOY_BOMB_EXPLODED 4

#define DECOY_END_ELIMINATION 0
#define DECOY_END_BOMB_EXPLODED 1
#define DECOY_END_BOMB_DEFUSED 2
#define DECOY_END_TIME_EXPIRED 3

/* ---- opaque handles -------------------------------------------------- */

typedef struct decoy_level decoy_level_t;   /* loaded level geometry */
typedef struct decoy_graph decoy_graph_t;   /* verified waypoint graph */
typedef struct decoy_models decoy_models_t; /* trained damage-model checkpoint */
typedef struct decoy_env decoy_env_t;       /* one simulator instance */

/* ---- levels ----------------------------------------------------------- */

DECOY_API int decoy_level_open(const char* path, decoy_level_t** out);
DECOY_API void decoy_level_close(decoy_level_t* level);

/* Map name from the file. Valid while the handle lives. */
DECOY_API const char* decoy_level_name(const decoy_level_t* level);

/* Axis-aligned bounds of the solid geometry, meters. */
DECOY_API int decoy_level_bounds(const decoy_level_t* level, double lo[3], double hi[3]);

/* ---- waypoint graphs -------------------------------------------------- */

/* Runs the full three-stage build (lattice fill, drop edges, agent-verified
 * pruning). spacing <= 0 selects the default lattice spacing. */
DECOY_API int decoy_graph_build(const decoy_level_t* level, double spacing, decoy_graph_t** out);

DECOY_API int decoy_graph_open(const char* path, decoy_graph_t** out);
DECOY_API int decoy_graph_save(const decoy_graph_t* graph, const char* path);
DECOY_API void decoy_graph_close(decoy_graph_t* graph);

DECOY_API int decoy_graph_node_count(const decoy_graph_t* graph);
DECOY_API int decoy_graph_edge_count(const decoy_graph_t* graph);
DECOY_API int decoy_graph_node_pos(const decoy_graph_t* graph, int node, double pos[3]);

/* Id of the waypoint nearest to (x, y, z), elevation-weighted. */
DECOY_API int decoy_graph_nearest(const decoy_graph_t* graph, double x, double y, double z);

/* ---- damage-model checkpoints ----------------------------------------- */

/* Opens a checkpoint directory produced by the training entry points. The
 * directory must contain the classifier, the generator, the calibrated
 * threshold and the feature schema. */
DECOY_API int decoy_models_open(const char* dir, decoy_models_t** out);
DECOY_API void decoy_models_close(decoy_models_t* models);

/* ---- environment: multi-agent round simulation ------------------------ */

typedef struct decoy_sim_config {
    int n_agents;            /* >= 2; first half T, second half CT */
    int tick_rate;           /* physics ticks per second */
    int decision_interval;   /* ticks between damage resolutions; must divide tick_rate */
    double round_time_limit; /* seconds; expiry only ends unplanted rounds */
    int enable_damage;       /* honored only when models are attached */
    int enable_bomb;
    char t_weapon[32]; /* weapon names must be in the model vocabulary */
    char ct_weapon[32];
    int armor; /* 0..100, both teams */
    int helmet;
} decoy_sim_config_t;

/* Fills the default configuration (10 agents, 60 ticks/s physics, damage
 * resolution every 30 ticks, 155 s, all mechanics on). */
DECOY_API void decoy_sim_config_init(decoy_sim_config_t* cfg);

/* Creates a simulator on the given level/graph. cfg NULL means defaults;
 * models NULL runs without damage resolution (movement, bomb and clock
 * still apply). The environment is reset with `seed` and ready to step. */
DECOY_API int decoy_env_create(const decoy_level_t* level, const decoy_graph_t* graph,
                               const decoy_sim_config_t* cfg, const decoy_models_t* models,
                               uint64_t seed, decoy_env_t** out);
DECOY_API void decoy_env_close(decoy_env_t* env);

/* Restarts the round from tick 0 with fresh spawns drawn from `seed`. */
DECOY_API int decoy_env_reset(decoy_env_t* env, uint64_t seed);

DECOY_API int decoy_env_agent_count(const decoy_env_t* env);

/* Physics tick count since reset, or a negative status. */
DECOY_API long long decoy_env_tick(const decoy_env_t* env);

/* Ids of agents currently awaiting an action, ascending. Returns the count;
 * writes at most `cap` ids. */
DECOY_API int decoy_env_ready(const decoy_env_t* env, int* ids, int cap);

typedef struct decoy_action {
    int agent_id;
    int kind;    /* DECOY_ACTION_* */
    int dir;     /* DECOY_DIR_*, for move */
    double view; /* degrees, for set_view */
} decoy_action_t;

typedef struct decoy_step {
    int done; /* round reached a terminal state */
    long long tick;
    double clock_seconds;
    int n_ready;
    int ready[DECOY_MAX_AGENTS]; /* agents awaiting their next action */
    int n_invalid;
    int invalid[DECOY_MAX_AGENTS]; /* agents whose action was rejected */
    double rewards[DECOY_MAX_AGENTS]; /* indexed by agent id; terminal +/-1 */
} decoy_step_t;

/* Dispatches one action per decision-ready agent, then advances physics
 * until some living agent needs a new action or the round ends. Supplying an
 * action for a non-ready agent is a contract error; a move along a missing
 * edge is rejected non-fatally and reported in `invalid`. */
DECOY_API int decoy_env_step(decoy_env_t* env, const decoy_action_t* actions, int n_actions,
                             decoy_step_t* out);

typedef struct decoy_agent_state {
    int id;
    int team; /* DECOY_TEAM_* */
    double pos[3];
    double view; /* degrees, [0, 360), 0 = north, 90 = east */
    int health;
    int alive;
    int node;  /* occupied waypoint (origin node while moving) */
    int ready; /* awaiting an action */
} decoy_agent_state_t;

typedef struct decoy_observation {
    decoy_agent_state_t self;
    int n_visible; /* living others in line of sight */
    decoy_agent_state_t visible[DECOY_MAX_AGENTS];
    int bomb_visible; /* carried by a visible agent, or loose and sighted */
    int bomb_status;  /* DECOY_BOMB_*, meaningful when visible or self carries */
    int bomb_carrier; /* agent id, -1 when loose */
    double bomb_pos[3];
} decoy_observation_t;

/* Per-agent view of the world: own full state plus line-of-sight filtered
 * others. Dead agents observe only themselves. */
DECOY_API int decoy_env_observe(const decoy_env_t* env, int agent_id, decoy_observation_t* out);

/* 1 once the round has ended, 0 while running, negative status on error. */
DECOY_API int decoy_env_done(const decoy_env_t* env);

typedef struct decoy_outcome {
    int winner; /* DECOY_TEAM_* */
    int reason; /* DECOY_END_* */
    long long end_tick;
} decoy_outcome_t;

/* Fails with DECOY_E_CONTRACT while the round is still running. */
DECOY_API int decoy_env_outcome(const decoy_env_t* env, decoy_outcome_t* out);

/* Line-delimited event log of the current round so far. Identical runs
 * produce byte-identical logs. */
DECOY_API int decoy_env_events(const decoy_env_t* env, char** out_text);

/* ---- one-shot pipeline entry points ----------------------------------- *
 * File-path based runs backing the command-line tool. Each validates its
 * inputs, writes its outputs atomically under the given paths, and reports
 * a summary. Optional outputs accept NULL.                                 */

typedef struct decoy_graph_stats {
    int nodes;
    int edges;
    int drop_edges;    /* one-way descent edges added in stage 2 */
    int edges_removed; /* edges failing agent-verified traversal */
    int nodes_pruned;  /* nodes outside the main connected component */
    double build_seconds;
} decoy_graph_stats_t;

/* Builds the waypoint graph for a map and saves it. */
DECOY_API int decoy_waypoints_run(const char* map_path, double spacing, const char* graph_out,
                                  decoy_graph_stats_t* stats);

typedef struct decoy_speed_report {
    int n_agents;
    long long physics_ticks;
    long long decisions;
    double wall_time;     /* seconds */
    double physics_time;  /* physics_ticks / tick rate */
    double ticks_per_sec; /* physics_ticks / wall_time */
    double time_scale;    /* physics_time / wall_time; > 1 = faster than real time */
} decoy_speed_report_t;

/* Random-walk throughput benchmark until `decisions` actions dispatched. */
DECOY_API int decoy_bench_run(const char* map_path, const char* graph_path, int n_agents,
                              long long decisions, uint64_t seed, decoy_speed_report_t* out);

/* Generates a synthetic corpus from a recipe file (round count, policy,
 * ground-truth damage law). Writes the corpus and, when law_out is given, a
 * copy of the law for later oracle-based evaluation. rounds_out receives the
 * number of rounds written. */
DECOY_API int decoy_synth_run(const char* map_path, const char* graph_path, const char* spec_path,
                              const char* corpus_out, const char* law_out, int* rounds_out);

/* Trains the damage-indicator classifier on a recorded corpus and writes
 * classifier + calibrated threshold + feature schema into model_dir.
 * hparams_path NULL selects defaults. metrics_json receives validation
 * metrics (accuracy, precision, recall, f1, auc, ap, threshold). */
DECOY_API int decoy_train_dip_run(const char* map_path, const char* corpus_path,
                                  const char* model_dir, const char* hparams_path, uint64_t seed,
                                  char** metrics_json);

/* Trains the damage-outcome generator likewise. latents_out, when given,
 * receives posterior means of the validation rows as CSV for external
 * projection. metrics_json receives reconstruction metrics (mae, r2,
 * hitgroup_accuracy, mean_kl). */
DECOY_API int decoy_train_dog_run(const char* map_path, const char* corpus_path,
                                  const char* model_dir, const char* hparams_path, uint64_t seed,
                                  const char* latents_out, char** metrics_json);

/* Evaluates a trained checkpoint against the held-out split of a corpus:
 * classifier ranking/threshold metrics plus generator reconstruction and
 * per-hit-group Wasserstein distances between generated and true damage. */
DECOY_API int decoy_eval_models_run(const char* map_path, const char* corpus_path,
                                    const char* model_dir, uint64_t seed, char** metrics_json);

typedef struct decoy_simulate_params {
    const char* map_path;
    const char* graph_path;
    const char* model_dir; /* damage source; NULL = no damage */
    const char* law_path;  /* rule-based damage source; exclusive with model_dir */
    const char* policy;    /* "random_walk" or "rush"; NULL = random_walk */
    int n_agents;          /* <= 0 = default 10 */
    int rounds;            /* <= 0 = 1 */
    uint64_t seed;
    int tick_rate;           /* <= 0 = default 60 */
    int decision_interval;   /* <= 0 = default 30; must divide tick_rate */
    double round_time_limit; /* <= 0 = default 155 s */
    int enable_bomb;
    const char* log_out;    /* event log of the first round; NULL = skip */
    const char* corpus_out; /* recorded rounds; NULL = skip */
} decoy_simulate_params_t;

/* Runs scripted rounds and records them. summary_json receives per-round
 * outcomes and tick counts. */
DECOY_API int decoy_simulate_run(const decoy_simulate_params_t* params, char** summary_json);

typedef struct decoy_replay_params {
    const char* map_path;
    const char* graph_path;
    const char* corpus_path; /* rounds to replay */
    const char* model_dir;   /* full-mechanics damage source */
    const char* law_path;    /* exclusive with model_dir */
    int full_mechanics;      /* 0 = movement only, 1 = combat + bomb */
    uint64_t seed;
    const char* corpus_out; /* replayed rounds */
} decoy_replay_params_t;

/* Replays every round of a corpus through the simulator, movement-only or
 * with full mechanics driven by the given damage source. */
DECOY_API int decoy_replay_run(const decoy_replay_params_t* params, char** summary_json);

/* Compares replayed rounds against their originals: trajectory similarity
 * per team, outcome agreement, health correlation, occupancy heatmaps.
 * Writes the report to report_out and the three grids (original, replayed,
 * difference) under heat_dir when given; report_json receives the report. */
DECOY_API int decoy_eval_run(const char* map_path, const char* original_corpus,
                             const char* replayed_corpus, double cell, int use_3d,
                             const char* report_out, const char* heat_dir, char** report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DECOY_H */
