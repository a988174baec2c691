#pragma once

#include "core/vec.hpp"
#include "nn/mlp.hpp"
#include "waypoint/graph.hpp"

#include <vector>

// Reference implementations used to cross-check the production code. Each one
// takes the most literal route available: full dynamic-programming tables,
// exhaustive scans, common-refinement expansions. They share no code with
// src/, so a bug there cannot cancel out here.
namespace testoracle {

// Full-matrix warping-path cost (no rolling buffers, no path bookkeeping).
double dtw_cost(const std::vector<decoy::Vec3>& a, const std::vector<decoy::Vec3>& b);

// Full-matrix discrete Frechet distance.
double frechet_dist(const std::vector<decoy::Vec3>& a, const std::vector<decoy::Vec3>& b);

// First Wasserstein distance by expanding both samples onto a common
// refinement of size n*m and averaging sorted pointwise gaps.
double wasserstein(std::vector<double> p, std::vector<double> q);

// Sum of edge frame costs along `path`; -1 when a hop is not a graph edge.
long path_frames(const decoy::waypoint::WaypointGraph& g, const std::vector<int>& path);

// Bellman-Ford relaxation until fixpoint; -1 when b is unreachable.
long shortest_frames(const decoy::waypoint::WaypointGraph& g, int a, int b);

// Linear scan under the same elevation-weighted distance, ties to lowest id.
int nearest_node(const decoy::waypoint::WaypointGraph& g, const decoy::Vec3& p, double wz = 2.0);

// Every node reaches node 0 and is reached from it (two plain flood fills).
bool single_scc(const decoy::waypoint::WaypointGraph& g);

// Layer-by-layer loops, no matrix helpers.
decoy::nn::Vector mlp_forward(const decoy::nn::Mlp& net, const decoy::nn::Vector& x);

// O(n^2) comparison counting, ties worth half.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Precision-recall step area, recomputing the confusion counts from scratch
// at every distinct score.
double average_precision(const std::vector<double>& scores, const std::vector<int>& labels);

double f1(const std::vector<double>& scores, const std::vector<int>& labels, double t);

// Best F1 of `score >= t` over an even grid; also reports the argmax.
double best_f1_on_grid(const std::vector<double>& scores, const std::vector<int>& labels,
                       double lo, double hi, int steps, double* best_t = nullptr);

} // namespace testoracle
