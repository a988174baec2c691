#pragma once

#include "models/checkpoint.hpp"
#include "sim/agent.hpp"

namespace decoy::models {

// DamageOracle backed by the trained stack. The classifier gates whether a
// visible pair deals damage this resolution; for gated pairs the generator
// samples the outcome. Randomness comes exclusively from the rng the engine
// hands in, so oracle substitution preserves run reproducibility.
class ModelOracle : public sim::DamageOracle {
  public:
    ModelOracle(ModelBundle bundle, std::string map);

    sim::DamageDecision resolve_pair(const sim::AgentState& attacker,
                                     const sim::AgentState& victim, Rng& rng) override;

    const ModelBundle& bundle() const { return m_bundle; }

  private:
    ModelBundle m_bundle;
    std::string m_map;
};

} // namespace decoy::models
