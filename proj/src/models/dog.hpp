#pragma once

#include "models/features.hpp"
#include "nn/losses.hpp"

namespace decoy::models {

struct DogHparams {
    std::vector<int> enc_hidden = {128, 128, 64}; // conditioning-encoder widths
    std::vector<int> vae_hidden = {128, 128};     // hidden widths of the latent encoder/decoder
    int d_z = 8;
    int embed_dim = 16;
    double lambda_d = 1.0;
    double lambda_g = 1.0;
    double lambda_kl = 0.1;
    double warmup_frac = 0.1; // KL weight ramps linearly over this share of steps
    int epochs = 40;
    int batch_size = 256;
    double lr = 1e-3;
    bool argmax_hitgroup = false; // generation: argmax instead of sampling the hit group
};

json dog_hparams_to_json(const DogHparams& hp);
DogHparams dog_hparams_from_json(const json& j, const std::string& ctx);

// Conditional VAE over damage outcomes. The conditioning encoder summarizes
// the pair features; at training time the observed (damage, hit group) is
// embedded and encoded into a Gaussian posterior, and the decoder maps
// (latent, context) back to a damage value and hit-group logits. Generation
// replaces the posterior with the standard-normal prior.
struct DogModel {
    nn::Mlp cond_encoder; // features -> context
    nn::Mlp embed_d;      // damage/100 -> embedding
    nn::Mlp embed_g;      // hit-group one-hot -> embedding
    nn::Mlp vae_encoder;  // concat(embeddings, context) -> (mu, log_var)
    nn::Mlp decoder;      // concat(z, context) -> (damage/100, hit-group logits)
    int d_z = 8;
    bool argmax_hitgroup = false;
};

struct DogRecon {
    double damage = 0.0; // HP, not rounded
    HitGroup group = HitGroup::Chest;
    nn::Vector logits;       // HITGROUP_COUNT entries
    nn::GaussianLatent post; // encoder posterior for the given outcome
};

// Deterministic eval-mode reconstruction: encodes the observed outcome, takes
// the posterior mean as the latent, decodes.
DogRecon dog_reconstruct(const DogModel& m, const nn::Vector& x, double damage, HitGroup group);

struct DogSampleOut {
    int damage = 0; // HP, rounded and clamped to [1, 500]
    HitGroup group = HitGroup::Chest;
};

// Samples the latent from the prior and decodes under the given context. The
// hit group is drawn from the decoded softmax unless the model is configured
// for argmax.
DogSampleOut dog_generate(const DogModel& m, const nn::Vector& x, Rng& rng);

struct DogMetrics {
    double mae = 0.0;               // HP
    double r2 = 0.0;                // damage reconstruction
    double hitgroup_accuracy = 0.0; // argmax of reconstructed logits
    double mean_kl = 0.0;
    long n = 0;
};

// Eval-mode reconstruction metrics over labeled rows.
DogMetrics dog_eval(const DogModel& m, const std::vector<DogRow>& rows);

struct DogTrainResult {
    DogModel model;
    DogMetrics val;
    std::vector<double> epoch_loss; // mean composite loss per epoch
};

DogTrainResult dog_train(const std::vector<DogRow>& train, const std::vector<DogRow>& val,
                         const DogHparams& hp, std::uint64_t seed);

// Posterior means with their labels as CSV: d_z latent columns, then damage
// and the hit-group index. Parses back losslessly.
std::string export_latents(const DogModel& m, const std::vector<DogRow>& rows);
std::vector<std::vector<double>> parse_latents(const std::string& csv);

// Plain discriminative contrast model: identical conditioning trunk, no
// latent variable, one point estimate per input. Exists to demonstrate what
// averaging over multimodal outcomes does to a regressor.
struct RegressionBaseline {
    nn::Mlp encoder;
    nn::Mlp head; // context -> (damage/100, hit-group logits)
};

struct RegressionPrediction {
    double damage = 0.0; // HP, not rounded
    HitGroup group = HitGroup::Chest;
};

RegressionBaseline regression_train(const std::vector<DogRow>& train, const DogHparams& hp,
                                    std::uint64_t seed);
RegressionPrediction regression_predict(const RegressionBaseline& m, const nn::Vector& x);

json dog_to_json(const DogModel& m);
DogModel dog_from_json(const json& j, const std::string& ctx);

} // namespace decoy::models
