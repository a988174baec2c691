#pragma once

#include "core/error.hpp"
#include "core/vec.hpp"

#include <string>

namespace decoy::waypoint {

// Eight movement headings on the ground lattice. +y is north, +x is east.
// Even values are cardinals, odds are diagonals; opposite() relies on the
// ordering.
enum class CompassDir { N = 0, NE, E, SE, S, SW, W, NW };

constexpr int COMPASS_COUNT = 8;

CompassDir opposite(CompassDir d);

// Lattice offset in cell units, e.g. N -> (0, +1), SE -> (+1, -1).
void dir_offset(CompassDir d, int& dx, int& dy);

// Heading of the sector center in compass degrees (N = 0, E = 90).
double dir_bearing_deg(CompassDir d);

const char* dir_name(CompassDir d);
CompassDir dir_from_name(const std::string& s);

// Snaps the horizontal bearing of (to - from) to the nearest 45-degree
// sector. An exact sector boundary resolves to the cardinal side. Requires a
// horizontal displacement above 1e-9.
CompassDir direction_label(const Vec3& from, const Vec3& to);

} // namespace decoy::waypoint
