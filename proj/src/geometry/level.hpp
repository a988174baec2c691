#pragma once

#include "core/types.hpp"
#include "core/vec.hpp"

#include <string>
#include <utility>
#include <vector>

namespace decoy::geometry {

struct Aabb {
    Vec3 lo;
    Vec3 hi;
};

// Static level description. Everything is axis-aligned boxes: solid geometry,
// spawn regions and bombsites alike. Coordinates are meters once loaded; the
// map file itself is written in engine units and scaled by `unit_scale` on
// load.
struct LevelGeometry {
    std::string name;
    double unit_scale = 1.0;
    std::vector<Aabb> boxes;
    std::vector<Aabb> t_spawns;
    std::vector<Aabb> ct_spawns;
    std::vector<std::pair<std::string, Aabb>> bombsites; // file order
    std::vector<Vec3> waypoint_seeds;
    std::vector<Vec3> manual_waypoints;

    const std::vector<Aabb>& spawns(Team t) const { return t == Team::T ? t_spawns : ct_spawns; }
};

// Parses and validates a map file. Throws parse errors with file:line for
// malformed text and validation errors naming the offending entry for
// semantic problems (inverted boxes, regions outside the level, bad scale).
LevelGeometry load_level(const std::string& path);

// Axis-aligned bounds enclosing every solid box.
Aabb level_bounds(const LevelGeometry& level);

} // namespace decoy::geometry
