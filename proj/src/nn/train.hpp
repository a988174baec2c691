#pragma once

#include "nn/mlp.hpp"

#include <functional>

namespace decoy::nn {

// Seed-deterministic epoch order for minibatching.
std::vector<int> shuffled_indices(int n, Rng& rng);

// Raises a model error naming `what` when a loss goes non-finite; training
// loops call this every step so a divergence aborts with context instead of
// poisoning the weights silently.
void require_finite_loss(double loss, const char* what, long step);

struct GradCheckResult {
    double max_rel_err = 0.0;
    double max_abs_err = 0.0;
};

// Central-difference check of analytic gradients. `loss_fn` must evaluate the
// loss at the current parameter values without touching the RNG (use a fixed
// eps draw). Perturbs every coordinate in place and restores it, so params
// are unchanged afterwards. rel err = |a - n| / max(1, |a| + |n|).
GradCheckResult grad_check(const std::vector<std::span<double>>& params,
                           const std::vector<std::span<double>>& analytic,
                           const std::function<double()>& loss_fn, double h = 1e-5);

} // namespace decoy::nn
