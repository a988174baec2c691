#pragma once

#include "core/error.hpp"
#include "core/jsonio.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"
#include "core/vec.hpp"

#include <optional>
#include <string>
#include <vector>

namespace decoy::data {

// One agent's recorded round: static equipment plus per-sample position, view
// angle, and health. All tracks in a round share one sample count T, taken at
// `fps` samples per second starting at t = 0.
struct AgentTrack {
    int id = -1;
    Team team = Team::T;
    std::string weapon = "unknown";
    int armor = 0;
    bool helmet = false;
    std::vector<Vec3> pos;
    std::vector<double> view;
    std::vector<int> health;
};

struct DamageEvent {
    int attacker = -1;
    int victim = -1;
    int damage = 0;
    HitGroup group = HitGroup::Chest;
    double t = 0.0; // seconds from round start; snapped to a sample after alignment
};

struct BombEvent {
    std::string kind; // plant | defuse | explode | drop | pickup
    double t = 0.0;
    int agent = -1;
};

struct Outcome {
    Team winner = Team::CT;
    std::string reason = "time_expired"; // elimination | bomb_exploded | bomb_defused | time_expired
    long end_tick = 0;                   // physics ticks at 60/s
};

struct Round {
    int round_id = 0;
    std::string map;
    int fps = 2;
    std::vector<AgentTrack> agents;
    std::vector<DamageEvent> damage_events;
    std::vector<BombEvent> bomb_events;
    Outcome outcome;

    int sample_count() const { return agents.empty() ? 0 : int(agents.front().pos.size()); }
    double duration() const { return sample_count() <= 1 ? 0.0 : double(sample_count() - 1) / fps; }
};

struct Corpus {
    std::string map;
    int fps = 2;
    std::vector<Round> rounds;
};

// Nearest sample index for an event timestamp, ties resolved to the earlier
// sample.
int aligned_tick(double t_seconds, int fps);

// Checks every Round invariant (consistent track lengths, duration cap,
// non-increasing health, event references). Returns the first violation.
std::optional<std::string> validate_round(const Round& r);

// Reads a corpus file, skipping rounds that fail validation; one diagnostic
// line per skipped round when `diagnostics` is given.
Corpus parse_rounds(const std::string& path, std::vector<std::string>* diagnostics = nullptr);

void save_corpus(const std::string& path, const Corpus& c);
json corpus_to_json(const Corpus& c);
Corpus corpus_from_json(const json& j, const std::string& ctx,
                        std::vector<std::string>* diagnostics = nullptr);

// Snaps event times to their nearest sample and merges events sharing
// (attacker, victim, hit group, sample) by summing damage. Event order after
// alignment is (sample, attacker, victim, hit group).
Round align_damage(const Round& r);

struct Split {
    std::vector<Round> train, val, test;
};

// Round-level 8:1:1 partition: train gets floor(0.8 n), val floor(0.1 n), the
// remainder goes to test. Shuffled by seed, so the same seed reproduces the
// same partition.
Split split_rounds(const std::vector<Round>& rounds, std::uint64_t seed);

} // namespace decoy::data
