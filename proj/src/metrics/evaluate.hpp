#pragma once

#include "data/round.hpp"
#include "geometry/level.hpp"
#include "metrics/heatmap.hpp"
#include "metrics/report.hpp"

namespace decoy::metrics {

struct EvalOptions {
    bool use_3d = false; // trajectory metrics default to the ground plane
    double cell = 1.0;   // heatmap cell size, meters
};

struct EvalResult {
    MetricReport report;
    HeatGrid original_heat;
    HeatGrid replayed_heat;
    HeatGrid diff; // percentage-point occupancy difference (original - replayed)
};

// Compares replayed rounds against their originals. Rounds pair by round_id,
// tracks pair by agent id; unequal track lengths are resampled to the longer
// one before the pointwise metrics. Produces per-team rows for dtw (raw and
// per-step), frechet, mean_euclidean and rmse, plus outcome agreement, pooled
// health correlation (omitted when health never varies, where correlation is
// undefined), and occupancy heatmaps over the level bounds.
EvalResult evaluate_replay(const std::vector<data::Round>& original,
                           const std::vector<data::Round>& replayed,
                           const geometry::Aabb& bounds, const EvalOptions& opt = {});

} // namespace decoy::metrics
