#pragma once

#include "core/jsonio.hpp"
#include "nn/mlp.hpp"

namespace decoy::nn {

// Structured checkpoint form: layer shapes, activation names, and parameter
// arrays. Doubles survive the JSON round trip bit for bit (the writer emits
// shortest-round-trip decimals), which the checkpoint tests rely on.
json mlp_to_json(const Mlp& net);
Mlp mlp_from_json(const json& j, const std::string& ctx);

} // namespace decoy::nn
