#pragma once

#include "core/error.hpp"

#include <array>
#include <string>

namespace decoy {

enum class Team { T = 0, CT = 1 };

inline const char* team_name(Team t) { return t == Team::T ? "T" : "CT"; }

inline Team team_from_name(const std::string& s) {
    if(s == "T")
        return Team::T;
    if(s == "CT")
        return Team::CT;
    raise(Errc::parse, "unknown team '" + s + "'");
}

inline Team other_team(Team t) { return t == Team::T ? Team::CT : Team::T; }

// Body regions a generated hit can land on.
enum class HitGroup { Head = 0, Neck, Chest, Stomach, Arm, Leg };

constexpr int HITGROUP_COUNT = 6;

inline const std::array<const char*, HITGROUP_COUNT>& hitgroup_names() {
    static const std::array<const char*, HITGROUP_COUNT> names = {"Head",    "Neck", "Chest",
                                                                  "Stomach", "Arm",  "Leg"};
    return names;
}

inline const char* hitgroup_name(HitGroup g) { return hitgroup_names()[int(g)]; }

inline HitGroup hitgroup_from_name(const std::string& s) {
    for(int i = 0; i < HITGROUP_COUNT; ++i)
        if(s == hitgroup_names()[i])
            return HitGroup(i);
    raise(Errc::parse, "unknown hit group '" + s + "'");
}

} // namespace decoy
