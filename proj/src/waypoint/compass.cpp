#include "waypoint/compass.hpp"

#include <array>
#include <cmath>

namespace decoy::waypoint {

namespace {
constexpr std::array<const char*, COMPASS_COUNT> NAMES = {"N", "NE", "E", "SE",
                                                          "S", "SW", "W", "NW"};
constexpr std::array<int, COMPASS_COUNT> DX = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr std::array<int, COMPASS_COUNT> DY = {1, 1, 0, -1, -1, -1, 0, 1};
} // namespace

CompassDir opposite(CompassDir d) { return CompassDir((int(d) + 4) % COMPASS_COUNT); }

void dir_offset(CompassDir d, int& dx, int& dy) {
    dx = DX[int(d)];
    dy = DY[int(d)];
}

double dir_bearing_deg(CompassDir d) { return 45.0 * int(d); }

const char* dir_name(CompassDir d) { return NAMES[int(d)]; }

CompassDir dir_from_name(const std::string& s) {
    for(int i = 0; i < COMPASS_COUNT; ++i)
        if(s == NAMES[i])
            return CompassDir(i);
    raise(Errc::parse, "unknown compass direction '" + s + "'");
}

CompassDir direction_label(const Vec3& from, const Vec3& to) {
    double dx = to.x - from.x;
    double dy = to.y - from.y;
    require(std::sqrt(dx * dx + dy * dy) > 1e-9, Errc::invalid_argument,
            "direction_label: displacement has no horizontal component");
    // Compass bearing: 0 at +y, growing clockwise towards +x.
    double bearing = std::atan2(dx, dy) * (180.0 / M_PI);
    if(bearing < 0.0)
        bearing += 360.0;
    double sectors = bearing / 45.0;
    double lo = std::floor(sectors);
    if(sectors - lo == 0.5) {
        // Exactly between two sectors: exactly one of them is a cardinal.
        int a = int(lo) % COMPASS_COUNT;
        int b = (a + 1) % COMPASS_COUNT;
        return CompassDir(a % 2 == 0 ? a : b);
    }
    return CompassDir(int(std::floor(sectors + 0.5)) % COMPASS_COUNT);
}

} // namespace decoy::waypoint
