#pragma once

#include "geometry/level.hpp"

#include <optional>

namespace decoy::geometry {

// Movement tuning shared by graph generation and the tick loop. Step height
// and drop limit are in meters; a ledge deeper than the step allowance is
// one-way.
constexpr double DEFAULT_STEP_ALLOWANCE = 0.45;
constexpr double DEFAULT_MAX_DROP = 3.0;

struct RayHit {
    double distance = 0.0;
    int box_index = -1;
    Vec3 point;
};

// First solid box along origin + t*dir for t in [0, max_dist]. `dir` must be
// unit length within 1e-9 or the call is rejected. A ray starting inside a
// box reports that box at distance zero.
std::optional<RayHit> raycast(const LevelGeometry& level, const Vec3& origin, const Vec3& dir,
                              double max_dist);

// True when a vertical capsule standing at `base` (sphere-capped segment,
// total height `height`) touches no solid box. Surface contact counts as
// free; callers that need clearance lift the base slightly.
bool capsule_free(const LevelGeometry& level, const Vec3& base, double radius, double height);

// Highest box top under (x, y) that is still reachable from z_hint: at most
// step_allowance above it and at most max_drop below it. Footprints are
// closed, so standing exactly on a box edge still counts.
std::optional<double> ground_height(const LevelGeometry& level, double x, double y, double z_hint,
                                    double step_allowance = DEFAULT_STEP_ALLOWANCE,
                                    double max_drop = DEFAULT_MAX_DROP);

// Closed containment test, used for bombsites and spawn regions.
bool region_contains(const Aabb& region, const Vec3& p);

} // namespace decoy::geometry
