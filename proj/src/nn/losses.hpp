#pragma once

#include "nn/mlp.hpp"

namespace decoy::nn {

// Every loss returns its value and writes the gradient with respect to its
// direct input (logits, prediction, or latent parameters), so callers can feed
// the gradient straight into backward().

// Binary cross-entropy on a raw logit, evaluated in the numerically safe
// log1p form. target is 0 or 1 (soft targets allowed).
double bce_with_logits(double logit, double target, double& dlogit);

// Cross-entropy of softmax(logits) against a class index.
double softmax_ce(const Vector& logits, int target, Vector& dlogits);

// Plain squared error (not halved): (pred - target)^2.
double squared_error(double pred, double target, double& dpred);

struct GaussianLatent {
    Vector mu;
    Vector log_var;
};

// KL(N(mu, diag exp(log_var)) || N(0, I)) in closed form.
double kl_gauss(const GaussianLatent& q);
// Same, accumulating d(KL)/dmu and d(KL)/dlog_var into the given vectors
// (sized like q, scaled by `weight`).
double kl_gauss(const GaussianLatent& q, double weight, Vector& dmu, Vector& dlog_var);

// z = mu + exp(log_var / 2) * eps, the differentiable sampling path.
Vector reparameterize(const GaussianLatent& q, const Vector& eps);

// Pushes a gradient dL/dz back to the latent parameters.
void reparameterize_backward(const GaussianLatent& q, const Vector& eps, const Vector& dz,
                             Vector& dmu, Vector& dlog_var);

Vector softmax(const Vector& logits);
double sigmoid(double z);

} // namespace decoy::nn
