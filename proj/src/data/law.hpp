#pragma once

#include "core/jsonio.hpp"
#include "sim/agent.hpp"

namespace decoy::data {

// Ground-truth damage rule for synthetic corpora. The same law object that
// generates a corpus is saved next to it and later serves as the evaluation
// oracle, so fidelity numbers can be computed against the true data process
// rather than against another model.
struct LawSpec {
    std::string kind = "never"; // never | always_fixed | distance_rule | bimodal | deterministic_range

    // always_fixed
    int damage = 20;
    std::string hit_group = "Chest";

    // distance_rule: fire iff distance < range, except a `noise` fraction of
    // would-be hits is suppressed. Suppression-only noise keeps the optimal
    // decision boundary where the rule puts it.
    double range = 5.0;
    double noise = 0.05;

    // deterministic_range: always fire; head inside `range`, leg outside
    int head_damage = 100;
    int other_damage = 20;

    // bimodal: fire with fire_prob; head (uniform head_lo..head_hi damage)
    // with head_prob, else leg (leg_lo..leg_hi)
    double fire_prob = 0.35;
    double head_prob = 0.5;
    int head_lo = 90, head_hi = 110;
    int leg_lo = 10, leg_hi = 30;
};

json law_to_json(const LawSpec& law);
LawSpec law_from_json(const json& j, const std::string& ctx);
void save_law(const std::string& path, const LawSpec& law);
LawSpec load_law(const std::string& path);

class LawOracle : public sim::DamageOracle {
  public:
    explicit LawOracle(LawSpec spec);
    sim::DamageDecision resolve_pair(const sim::AgentState& attacker,
                                     const sim::AgentState& victim, Rng& rng) override;
    const LawSpec& spec() const { return m_spec; }

  private:
    LawSpec m_spec;
    HitGroup m_fixed_group;
};

} // namespace decoy::data
