#pragma once

#include "core/error.hpp"
#include "core/vec.hpp"

#include <vector>

namespace decoy::metrics {

// Trajectory similarity measures over point sequences. All of them use plain
// Euclidean ground distance on whatever coordinates they are handed; callers
// that want ground-plane comparisons zero the z component first.

struct DtwResult {
    double cost = 0.0; // summed distance along the optimal warping path
    int path_len = 0;  // matched pairs on that path
    double per_step() const { return cost / path_len; }
};

// Classic dynamic-programming alignment with boundary matching and monotone
// steps. Tie-breaking for the reported path length prefers the diagonal, then
// advancing the first sequence.
DtwResult dtw(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

// Discrete Frechet distance: minimum over monotone couplings of the maximum
// pointwise distance.
double frechet(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

// Pointwise means over equal-length sequences.
double mean_euclidean(const std::vector<Vec3>& a, const std::vector<Vec3>& b);
double rmse(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

// Exact first Wasserstein distance between two empirical 1-D distributions,
// integrating |quantile difference| over merged breakpoints; sizes may differ.
double wasserstein1d(std::vector<double> p, std::vector<double> q);

// Pearson correlation; rejects constant series, where r is undefined.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

double mae(const std::vector<double>& x, const std::vector<double>& y);

// Fraction of pairs whose two entries are equal. Entries are winner codes.
double outcome_agreement(const std::vector<std::pair<int, int>>& winners);

} // namespace decoy::metrics
