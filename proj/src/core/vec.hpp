#pragma once

#include <cmath>

namespace decoy {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Ground-plane (xy) distance; z is handled separately almost everywhere.
inline double dist_xy(const Vec3& a, const Vec3& b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline Vec3 lerp(const Vec3& a, const Vec3& b, double t) {
    return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t, a.z + (b.z - a.z) * t};
}

inline double wrap_degrees(double v) {
    v = std::fmod(v, 360.0);
    return v < 0.0 ? v + 360.0 : v;
}

// Heading of the displacement in compass degrees (north 0, east 90).
inline double bearing_degrees(const Vec3& from, const Vec3& to) {
    double b = std::atan2(to.x - from.x, to.y - from.y) * 180.0 / 3.141592653589793238462643;
    return wrap_degrees(b);
}

} // namespace decoy
