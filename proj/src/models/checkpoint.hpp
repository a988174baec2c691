#pragma once

#include "models/dip.hpp"
#include "models/dog.hpp"

namespace decoy::models {

// A complete trained damage stack: input encoding, fire classifier, outcome
// generator.
struct ModelBundle {
    FeatureSchema schema;
    DipModel dip;
    DogModel dog;
};

// Checkpoint directory layout: `dip.model`, `dog.model`, `threshold.txt`,
// `features.schema`. The threshold file is authoritative on load; the copy
// inside dip.model is metadata for humans reading the checkpoint.
void save_models(const std::string& dir, const ModelBundle& b);
ModelBundle load_models(const std::string& dir);

// Partial writers for the two training entry points, which each produce one
// half of a checkpoint. Both write the schema; a schema already present in
// the directory must match exactly, so halves trained against different
// encodings cannot be mixed silently.
void save_dip_checkpoint(const std::string& dir, const FeatureSchema& schema, const DipModel& dip);
void save_dog_checkpoint(const std::string& dir, const FeatureSchema& schema, const DogModel& dog);

} // namespace decoy::models
