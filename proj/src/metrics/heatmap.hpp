#pragma once

#include "core/error.hpp"
#include "core/vec.hpp"

#include <string>
#include <vector>

namespace decoy::metrics {

struct GridSpec {
    double origin_x = 0.0; // world coordinate of cell (0,0)'s lower corner
    double origin_y = 0.0;
    double cell = 1.0; // meters per cell
    int nx = 0;
    int ny = 0;

    bool operator==(const GridSpec&) const = default;
};

// Occupancy grid over the ground plane. Values are visit counts for heatmap()
// output and signed percentages for pct_diff() output.
struct HeatGrid {
    GridSpec spec;
    std::vector<double> values; // row-major, y major

    double& at(int ix, int iy) { return values[std::size_t(iy) * spec.nx + ix]; }
    double at(int ix, int iy) const { return values[std::size_t(iy) * spec.nx + ix]; }
    double total() const;
};

// Spec sized to cover [lo, hi] in xy with the given cell size.
GridSpec grid_for_bounds(const Vec3& lo, const Vec3& hi, double cell);

// Bins every trajectory point into its cell; points outside the extent are
// clamped into the border cells so no visit is lost.
HeatGrid heatmap(const std::vector<std::vector<Vec3>>& trajectories, const GridSpec& spec);

// Per-cell difference of occupancy shares, in percentage points: positive
// where h1 concentrates more mass than h2.
HeatGrid pct_diff(const HeatGrid& h1, const HeatGrid& h2);

// Plain numeric dump: a header line with the spec, then ny rows of nx values.
std::string serialize_grid(const HeatGrid& g);
HeatGrid parse_grid(const std::string& text, const std::string& ctx);

} // namespace decoy::metrics
