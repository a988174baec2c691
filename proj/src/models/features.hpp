#pragma once

#include "core/jsonio.hpp"
#include "data/round.hpp"
#include "geometry/level.hpp"
#include "nn/mlp.hpp"
#include "sim/agent.hpp"

namespace decoy::models {

// Everything needed to turn raw game state into model inputs: the categorical
// vocabularies and the position-normalization bounds. Saved next to trained
// weights so inference encodes exactly the way training did.
struct FeatureSchema {
    std::vector<std::string> maps;
    std::vector<std::string> weapons; // includes the catch-all "unknown"
    Vec3 lo, hi;                      // level bounds used for position scaling

    int feature_dim() const;
    // Index into the one-hot block; a name outside the vocabulary raises an
    // error that lists the accepted values.
    int map_index(const std::string& name) const;
    int weapon_index(const std::string& name) const;
};

// Fixed weapon list shared by every trained model in this project. "unknown"
// is a real vocabulary entry for ingest paths that genuinely lack weapon
// info; a weapon string outside the vocabulary is an error, not a silent
// fallback, so typos in configs surface immediately.
const std::vector<std::string>& default_weapon_vocabulary();

FeatureSchema make_schema(const std::vector<std::string>& maps, const geometry::Aabb& bounds);

json schema_to_json(const FeatureSchema& s);
FeatureSchema schema_from_json(const json& j, const std::string& ctx);
void save_schema(const std::string& path, const FeatureSchema& s);
FeatureSchema load_schema(const std::string& path);

// Input row for one ordered (attacker, victim) pair. Layout: map one-hot,
// attacker state, victim state, then pair-derived distance and bearing, with
// every component in [-1, 1]. Attacker and victim occupy distinct blocks, so
// swapping roles changes the row.
nn::Vector encode_pair(const FeatureSchema& schema, const std::string& map,
                       const sim::AgentState& attacker, const sim::AgentState& victim);

struct PairRow {
    int attacker = -1;
    int victim = -1;
    nn::Vector x;
};

// Rows for every ordered cross-team pair of living agents, sorted by
// (attacker, victim). Dead agents and teammates never pair.
std::vector<PairRow> pairwise_batch(const FeatureSchema& schema, const std::string& map,
                                    const std::vector<sim::AgentState>& agents);

// Supervised rows distilled from recorded rounds (damage events are aligned
// to samples first; see align_damage).
struct DipRow {
    nn::Vector x;
    int label = 0; // 1 iff a damage event matched this (pair, sample)
};

struct DogRow {
    nn::Vector x;
    double damage = 0.0; // HP
    HitGroup group = HitGroup::Chest;
};

// One classification row per (sample, ordered cross-team living pair).
std::vector<DipRow> dip_rows(const FeatureSchema& schema, const std::vector<data::Round>& rounds);
// One generation row per aligned damage event.
std::vector<DogRow> dog_rows(const FeatureSchema& schema, const std::vector<data::Round>& rounds);

} // namespace decoy::models
