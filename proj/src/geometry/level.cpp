#include "geometry/level.hpp"

#include "core/jsonio.hpp"

#include <algorithm>
#include <limits>

namespace decoy::geometry {

namespace {

Vec3 parse_point(const json& j, double scale, const std::string& ctx) {
    if(!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
       !j[2].is_number())
        raise(Errc::parse, ctx + ": expected [x, y, z]");
    return {j[0].get<double>() * scale, j[1].get<double>() * scale, j[2].get<double>() * scale};
}

Aabb parse_box(const json& j, double scale, const std::string& ctx) {
    if(!j.is_array() || j.size() != 6)
        raise(Errc::parse, ctx + ": expected [x1, y1, z1, x2, y2, z2]");
    for(const auto& v : j)
        if(!v.is_number())
            raise(Errc::parse, ctx + ": non-numeric coordinate");
    Aabb b;
    b.lo = {j[0].get<double>() * scale, j[1].get<double>() * scale, j[2].get<double>() * scale};
    b.hi = {j[3].get<double>() * scale, j[4].get<double>() * scale, j[5].get<double>() * scale};
    if(!(b.lo.x < b.hi.x && b.lo.y < b.hi.y && b.lo.z < b.hi.z))
        raise(Errc::validation, ctx + ": box has non-positive extent");
    return b;
}

bool box_inside(const Aabb& inner, const Aabb& outer) {
    return inner.lo.x >= outer.lo.x && inner.lo.y >= outer.lo.y && inner.lo.z >= outer.lo.z &&
           inner.hi.x <= outer.hi.x && inner.hi.y <= outer.hi.y && inner.hi.z <= outer.hi.z;
}

} // namespace

LevelGeometry load_level(const std::string& path) {
    json j = load_json(path);
    if(!j.is_object())
        raise(Errc::parse, path + ": top level is not an object");

    LevelGeometry level;
    level.name = field_as<std::string>(j, "name", path);
    level.unit_scale = field_as<double>(j, "unit_scale", path);
    if(!(level.unit_scale > 0.0))
        raise(Errc::validation, path + ": unit_scale must be positive");
    double s = level.unit_scale;

    const json& boxes = j.contains("boxes") ? j["boxes"] : json::array();
    if(!boxes.is_array() || boxes.empty())
        raise(Errc::validation, path + ": map needs at least one solid box");
    for(std::size_t i = 0; i < boxes.size(); ++i)
        level.boxes.push_back(parse_box(boxes[i], s, path + ": boxes[" + std::to_string(i) + "]"));

    const json& spawns = field_as<json>(j, "spawns", path);
    for(const char* team : {"T", "CT"}) {
        if(!spawns.contains(team))
            raise(Errc::validation, path + ": spawns." + std::string(team) + " missing");
        const json& list = spawns[team];
        auto& dst = std::string(team) == "T" ? level.t_spawns : level.ct_spawns;
        for(std::size_t i = 0; i < list.size(); ++i)
            dst.push_back(parse_box(list[i], s,
                                    path + ": spawns." + team + "[" + std::to_string(i) + "]"));
        if(dst.empty())
            raise(Errc::validation, path + ": spawns." + std::string(team) + " is empty");
    }

    const json& sites = field_as<json>(j, "bombsites", path);
    if(!sites.is_object() || sites.empty())
        raise(Errc::validation, path + ": map needs at least one bombsite");
    for(auto it = sites.begin(); it != sites.end(); ++it)
        level.bombsites.emplace_back(it.key(),
                                     parse_box(it.value(), s, path + ": bombsites." + it.key()));

    if(j.contains("waypoint_seeds"))
        for(std::size_t i = 0; i < j["waypoint_seeds"].size(); ++i)
            level.waypoint_seeds.push_back(parse_point(
                j["waypoint_seeds"][i], s, path + ": waypoint_seeds[" + std::to_string(i) + "]"));
    if(j.contains("manual_waypoints"))
        for(std::size_t i = 0; i < j["manual_waypoints"].size(); ++i)
            level.manual_waypoints.push_back(
                parse_point(j["manual_waypoints"][i], s,
                            path + ": manual_waypoints[" + std::to_string(i) + "]"));

    Aabb bounds = level_bounds(level);
    auto check_region = [&](const Aabb& r, const std::string& what) {
        if(!box_inside(r, bounds))
            raise(Errc::validation, path + ": " + what + " lies outside the level bounds");
    };
    for(std::size_t i = 0; i < level.t_spawns.size(); ++i)
        check_region(level.t_spawns[i], "spawns.T[" + std::to_string(i) + "]");
    for(std::size_t i = 0; i < level.ct_spawns.size(); ++i)
        check_region(level.ct_spawns[i], "spawns.CT[" + std::to_string(i) + "]");
    for(const auto& [name, box] : level.bombsites)
        check_region(box, "bombsites." + name);

    return level;
}

Aabb level_bounds(const LevelGeometry& level) {
    double inf = std::numeric_limits<double>::infinity();
    Aabb b{{inf, inf, inf}, {-inf, -inf, -inf}};
    for(const Aabb& box : level.boxes) {
        b.lo.x = std::min(b.lo.x, box.lo.x);
        b.lo.y = std::min(b.lo.y, box.lo.y);
        b.lo.z = std::min(b.lo.z, box.lo.z);
        b.hi.x = std::max(b.hi.x, box.hi.x);
        b.hi.y = std::max(b.hi.y, box.hi.y);
        b.hi.z = std::max(b.hi.z, box.hi.z);
    }
    return b;
}

} // namespace decoy::geometry
