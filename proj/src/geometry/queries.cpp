#include "geometry/queries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace decoy::geometry {

namespace {

// Slab interval for one axis. Returns false when the ray is parallel to the
// slab and starts outside it.
bool axis_slab(double o, double d, double lo, double hi, double& tmin, double& tmax) {
    if(d == 0.0)
        return o >= lo && o <= hi;
    double inv = 1.0 / d;
    double t0 = (lo - o) * inv;
    double t1 = (hi - o) * inv;
    if(t0 > t1)
        std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    return true;
}

} // namespace

std::optional<RayHit> raycast(const LevelGeometry& level, const Vec3& origin, const Vec3& dir,
                              double max_dist) {
    double len = norm(dir);
    require(std::abs(len - 1.0) <= 1e-9, Errc::invalid_argument,
            "raycast: direction must be unit length");
    require(max_dist >= 0.0, Errc::invalid_argument, "raycast: negative max distance");

    std::optional<RayHit> best;
    for(std::size_t i = 0; i < level.boxes.size(); ++i) {
        const Aabb& b = level.boxes[i];
        double tmin = -std::numeric_limits<double>::infinity();
        double tmax = std::numeric_limits<double>::infinity();
        if(!axis_slab(origin.x, dir.x, b.lo.x, b.hi.x, tmin, tmax))
            continue;
        if(!axis_slab(origin.y, dir.y, b.lo.y, b.hi.y, tmin, tmax))
            continue;
        if(!axis_slab(origin.z, dir.z, b.lo.z, b.hi.z, tmin, tmax))
            continue;
        if(tmax < tmin || tmax < 0.0)
            continue;
        double t = tmin < 0.0 ? 0.0 : tmin; // negative entry means we start inside
        if(t > max_dist)
            continue;
        if(!best || t < best->distance)
            best = RayHit{t, int(i), origin + dir * t};
    }
    return best;
}

bool capsule_free(const LevelGeometry& level, const Vec3& base, double radius, double height) {
    require(radius > 0.0 && height >= 2.0 * radius, Errc::invalid_argument,
            "capsule_free: need radius > 0 and height >= 2 * radius");
    double z1 = base.z + radius;
    double z2 = base.z + height - radius;
    double r2 = radius * radius;
    for(const Aabb& b : level.boxes) {
        // Squared distance from the capsule's axis segment to the box; the
        // segment is vertical so each axis separates independently.
        double dx = std::max({b.lo.x - base.x, 0.0, base.x - b.hi.x});
        double dy = std::max({b.lo.y - base.y, 0.0, base.y - b.hi.y});
        double dz = std::max({b.lo.z - z2, 0.0, z1 - b.hi.z});
        if(dx * dx + dy * dy + dz * dz < r2)
            return false;
    }
    return true;
}

std::optional<double> ground_height(const LevelGeometry& level, double x, double y, double z_hint,
                                    double step_allowance, double max_drop) {
    double best = -std::numeric_limits<double>::infinity();
    double ceiling = z_hint + step_allowance;
    for(const Aabb& b : level.boxes) {
        if(x < b.lo.x || x > b.hi.x || y < b.lo.y || y > b.hi.y)
            continue;
        if(b.hi.z <= ceiling)
            best = std::max(best, b.hi.z);
    }
    if(best == -std::numeric_limits<double>::infinity() || best < z_hint - max_drop)
        return std::nullopt;
    return best;
}

bool region_contains(const Aabb& region, const Vec3& p) {
    return p.x >= region.lo.x && p.x <= region.hi.x && p.y >= region.lo.y && p.y <= region.hi.y &&
           p.z >= region.lo.z && p.z <= region.hi.z;
}

} // namespace decoy::geometry
