#include "models/oracle.hpp"

namespace decoy::models {

ModelOracle::ModelOracle(ModelBundle bundle, std::string map)
    : m_bundle(std::move(bundle)), m_map(std::move(map)) {
    // Fail at construction, not mid-round, if the map was never trained on.
    m_bundle.schema.map_index(m_map);
}

sim::DamageDecision ModelOracle::resolve_pair(const sim::AgentState& attacker,
                                              const sim::AgentState& victim, Rng& rng) {
    nn::Vector x = encode_pair(m_bundle.schema, m_map, attacker, victim);
    if(!m_bundle.dip.decide(x))
        return {};
    DogSampleOut s = dog_generate(m_bundle.dog, x, rng);
    return {true, s.damage, s.group};
}

} // namespace decoy::models
