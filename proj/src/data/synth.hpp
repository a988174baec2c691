#pragma once

#include "data/law.hpp"
#include "data/round.hpp"
#include "sim/simulate.hpp"

namespace decoy::data {

// Stride for deriving per-round seeds from one corpus seed (the 64-bit
// golden ratio, so consecutive rounds land far apart in seed space). Shared
// by every entry point that runs numbered rounds under a single user seed.
constexpr std::uint64_t ROUND_SEED_STRIDE = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t round_seed(std::uint64_t corpus_seed, int round_index) {
    return corpus_seed ^ (ROUND_SEED_STRIDE * std::uint64_t(round_index + 1));
}

// Recipe for a synthetic corpus: how many rounds to run, with which policy,
// under which damage law. Serializable so a corpus can be regenerated from
// its manifest alone.
struct SynthSpec {
    int rounds = 25;
    int n_agents = 10;
    std::uint64_t seed = 1;
    std::string policy = "random_walk"; // random_walk | rush
    double round_time_limit = 40.0;     // short rounds keep synthetic corpora compact
    bool enable_bomb = false;
    LawSpec law;
};

json synth_spec_to_json(const SynthSpec& s);
SynthSpec synth_spec_from_json(const json& j, const std::string& ctx);

// Runs `spec.rounds` scripted rounds and collects the recordings. Each round
// derives its own seed from spec.seed, so corpora with different round counts
// share their common prefix.
Corpus synth_rounds(const geometry::LevelGeometry& level, const waypoint::WaypointGraph& graph,
                    const SynthSpec& spec);

} // namespace decoy::data
