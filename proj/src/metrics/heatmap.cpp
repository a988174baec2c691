#include "metrics/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace decoy::metrics {

double HeatGrid::total() const {
    double t = 0.0;
    for(double v : values)
        t += v;
    return t;
}

GridSpec grid_for_bounds(const Vec3& lo, const Vec3& hi, double cell) {
    require(cell > 0.0, Errc::invalid_argument, "grid_for_bounds: non-positive cell size");
    require(hi.x > lo.x && hi.y > lo.y, Errc::invalid_argument,
            "grid_for_bounds: empty extent");
    GridSpec s;
    s.origin_x = lo.x;
    s.origin_y = lo.y;
    s.cell = cell;
    s.nx = std::max(1, int(std::ceil((hi.x - lo.x) / cell)));
    s.ny = std::max(1, int(std::ceil((hi.y - lo.y) / cell)));
    return s;
}

HeatGrid heatmap(const std::vector<std::vector<Vec3>>& trajectories, const GridSpec& spec) {
    require(spec.nx > 0 && spec.ny > 0 && spec.cell > 0.0, Errc::invalid_argument,
            "heatmap: bad grid spec");
    HeatGrid g;
    g.spec = spec;
    g.values.assign(std::size_t(spec.nx) * spec.ny, 0.0);
    for(const auto& traj : trajectories) {
        for(const Vec3& p : traj) {
            int ix = int(std::floor((p.x - spec.origin_x) / spec.cell));
            int iy = int(std::floor((p.y - spec.origin_y) / spec.cell));
            ix = std::clamp(ix, 0, spec.nx - 1);
            iy = std::clamp(iy, 0, spec.ny - 1);
            g.at(ix, iy) += 1.0;
        }
    }
    return g;
}

HeatGrid pct_diff(const HeatGrid& h1, const HeatGrid& h2) {
    require(h1.spec == h2.spec, Errc::invalid_argument,
            "pct_diff: grids have different origin/extent/cell");
    double t1 = h1.total(), t2 = h2.total();
    require(t1 > 0.0 && t2 > 0.0, Errc::invalid_argument, "pct_diff: empty grid");
    HeatGrid out;
    out.spec = h1.spec;
    out.values.resize(h1.values.size());
    for(std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = (h1.values[i] / t1 - h2.values[i] / t2) * 100.0;
    return out;
}

std::string serialize_grid(const HeatGrid& g) {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof buf, "grid %.17g %.17g %.17g %d %d\n", g.spec.origin_x,
                  g.spec.origin_y, g.spec.cell, g.spec.nx, g.spec.ny);
    os << buf;
    for(int iy = 0; iy < g.spec.ny; ++iy) {
        for(int ix = 0; ix < g.spec.nx; ++ix) {
            std::snprintf(buf, sizeof buf, "%.17g", g.at(ix, iy));
            os << buf << (ix + 1 == g.spec.nx ? "\n" : " ");
        }
    }
    return os.str();
}

HeatGrid parse_grid(const std::string& text, const std::string& ctx) {
    std::istringstream is(text);
    std::string tag;
    HeatGrid g;
    is >> tag >> g.spec.origin_x >> g.spec.origin_y >> g.spec.cell >> g.spec.nx >> g.spec.ny;
    require(bool(is) && tag == "grid", Errc::parse, ctx + ": not a grid file");
    require(g.spec.nx > 0 && g.spec.ny > 0 && g.spec.cell > 0.0, Errc::parse,
            ctx + ": bad grid header");
    g.values.resize(std::size_t(g.spec.nx) * g.spec.ny);
    for(double& v : g.values)
        is >> v;
    require(bool(is), Errc::parse, ctx + ": truncated grid data");
    return g;
}

} // namespace decoy::metrics
