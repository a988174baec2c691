#include "waypoint/builder.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace decoy::waypoint {

using geometry::LevelGeometry;

namespace {

void check_params(const GraphBuildParams& p) {
    require(p.spacing > 0.0, Errc::invalid_argument, "graph build: spacing must be positive");
    require(p.step_allowance >= 0.0, Errc::invalid_argument,
            "graph build: negative step allowance");
    require(p.max_drop >= p.step_allowance, Errc::invalid_argument,
            "graph build: max_drop below step allowance");
    require(p.agent.radius > 0.0 && p.agent.height >= 2.0 * p.agent.radius,
            Errc::invalid_argument, "graph build: degenerate agent capsule");
    require(p.agent.speed > 0.0 && p.agent.tick_rate > 0, Errc::invalid_argument,
            "graph build: agent speed/tick rate must be positive");
}

// xy spatial hash over node positions, used for dedup and radius queries
// while the graph is under construction.
class NodeHash {
  public:
    explicit NodeHash(double cell) : m_cell(cell) {}

    void insert(int id, const Vec3& p) { m_cells[key_of(p)].push_back(id); }

    // Smallest (xy distance, id) node within r_xy whose z is within band of
    // p.z; -1 when none.
    int nearest_within(const WaypointGraph& g, const Vec3& p, double r_xy, double band) const {
        int best = -1;
        double best_d = r_xy;
        scan(p, r_xy, [&](int id) {
            const Vec3& q = g.nodes[id].pos;
            if(std::abs(q.z - p.z) > band)
                return;
            double d = dist_xy(p, q);
            if(d < best_d || (d == best_d && (best < 0 || id < best))) {
                best_d = d;
                best = id;
            }
        });
        return best;
    }

    // Ascending ids within r_xy of p whose z lies in [p.z - below, p.z + above].
    std::vector<int> collect_within(const WaypointGraph& g, const Vec3& p, double r_xy,
                                    double below, double above) const {
        std::vector<int> ids;
        scan(p, r_xy, [&](int id) {
            const Vec3& q = g.nodes[id].pos;
            double dz = p.z - q.z;
            if(dz > below || -dz > above)
                return;
            if(dist_xy(p, q) <= r_xy)
                ids.push_back(id);
        });
        std::sort(ids.begin(), ids.end());
        return ids;
    }

  private:
    template <typename Fn>
    void scan(const Vec3& p, double r, Fn&& fn) const {
        int span = int(std::ceil(r / m_cell));
        int cx = int(std::floor(p.x / m_cell));
        int cy = int(std::floor(p.y / m_cell));
        for(int ix = cx - span; ix <= cx + span; ++ix) {
            for(int iy = cy - span; iy <= cy + span; ++iy) {
                auto it = m_cells.find((std::int64_t(ix) << 32) ^
                                       (std::int64_t(iy) & 0xffffffff));
                if(it == m_cells.end())
                    continue;
                for(int id : it->second)
                    fn(id);
            }
        }
    }

    std::int64_t key_of(const Vec3& p) const {
        return (std::int64_t(std::floor(p.x / m_cell)) << 32) ^
               (std::int64_t(std::int64_t(std::floor(p.y / m_cell))) & 0xffffffff);
    }

    double m_cell;
    std::unordered_map<std::int64_t, std::vector<int>> m_cells;
};

bool capsule_ok(const LevelGeometry& level, const AgentSpec& a, const Vec3& ground_pos) {
    Vec3 base = ground_pos;
    base.z += a.clearance;
    return geometry::capsule_free(level, base, a.radius, a.height);
}

// Sight lines at torso and head height between two standing positions. A thin
// low obstacle can slip between these; the stage-3 capsule walk exists to
// catch exactly that.
bool rays_clear(const LevelGeometry& level, const AgentSpec& a, const Vec3& from, const Vec3& to) {
    const double heights[2] = {0.5 * a.height, a.height - 0.1};
    for(double h : heights) {
        Vec3 o = from;
        o.z += h;
        Vec3 t = to;
        t.z += h;
        Vec3 seg = t - o;
        double len = norm(seg);
        if(len < 1e-12)
            continue;
        auto hit = geometry::raycast(level, o, seg * (1.0 / len), len);
        if(hit && hit->distance < len - 1e-9)
            return false;
    }
    return true;
}

int frame_estimate(double dist, const AgentSpec& a) {
    double step = a.speed / a.tick_rate;
    return std::max(1, int(std::ceil(dist / step)));
}

struct Builder {
    const LevelGeometry& level;
    const GraphBuildParams& p;
    WaypointGraph& g;
    NodeHash hash;
    std::deque<int> frontier;

    Builder(const LevelGeometry& lv, const GraphBuildParams& params, WaypointGraph& graph)
        : level(lv), p(params), g(graph), hash(0.5 * params.spacing) {}

    std::optional<Vec3> snap_to_ground(const Vec3& pt) const {
        auto gz = geometry::ground_height(level, pt.x, pt.y, pt.z, p.step_allowance, p.max_drop);
        if(!gz)
            return std::nullopt;
        return Vec3{pt.x, pt.y, *gz};
    }

    void connect(int a, int b) {
        const Vec3& pa = g.nodes[a].pos;
        const Vec3& pb = g.nodes[b].pos;
        double dxy = dist_xy(pa, pb);
        if(dxy <= 1e-9)
            return; // vertical stacks cannot carry a compass label
        if(!g.find_edge(a, b))
            g.add_edge(a, b, direction_label(pa, pb), frame_estimate(dxy, p.agent));
        if(!g.find_edge(b, a))
            g.add_edge(b, a, direction_label(pb, pa), frame_estimate(dxy, p.agent));
    }

    int create_node(const Vec3& pos) {
        int id = g.add_node(pos);
        hash.insert(id, pos);
        frontier.push_back(id);
        return id;
    }

    void expand() {
        while(!frontier.empty()) {
            int u = frontier.front();
            frontier.pop_front();
            Vec3 up = g.nodes[u].pos;
            for(int d = 0; d < COMPASS_COUNT; ++d) {
                int dx, dy;
                dir_offset(CompassDir(d), dx, dy);
                Vec3 probe{up.x + dx * p.spacing, up.y + dy * p.spacing, up.z};
                auto cand = snap_to_ground(probe);
                if(!cand)
                    continue;
                if(up.z - cand->z > p.step_allowance)
                    continue; // too deep for a walk edge; drops are stage 2
                // Merge radius is half a cell; up to 3/4 of a cell we stitch
                // onto the existing node instead of planting a new one beside
                // it.
                int v = hash.nearest_within(g, *cand, 0.75 * p.spacing, p.step_allowance);
                if(v >= 0) {
                    if(v == u)
                        continue;
                    bool in_band = std::abs(up.z - g.nodes[v].pos.z) <= p.step_allowance;
                    if(in_band && rays_clear(level, p.agent, up, g.nodes[v].pos)) {
                        connect(u, v);
                        continue;
                    }
                    double d_xy = dist_xy(*cand, g.nodes[v].pos);
                    if(d_xy <= 0.5 * p.spacing)
                        continue; // occupied spot, unreachable from here
                }
                if(!capsule_ok(level, p.agent, *cand))
                    continue;
                if(!rays_clear(level, p.agent, up, *cand))
                    continue;
                connect(u, create_node(*cand));
            }
        }
    }
};

// Kosaraju over the edge lists; returns component id per node, components
// numbered in discovery order.
std::vector<int> strongly_connected_components(const WaypointGraph& g, int& comp_count) {
    int n = g.node_count();
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    for(int s = 0; s < n; ++s) {
        if(seen[s])
            continue;
        // iterative DFS recording finish order
        std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
        seen[s] = 1;
        while(!stack.empty()) {
            auto& [u, i] = stack.back();
            if(i < g.out[u].size()) {
                int v = g.out[u][i++].to;
                if(!seen[v]) {
                    seen[v] = 1;
                    stack.emplace_back(v, 0);
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }

    std::vector<std::vector<int>> rin(n);
    for(const auto& adj : g.out)
        for(const Edge& e : adj)
            rin[e.to].push_back(e.from);

    std::vector<int> comp(n, -1);
    comp_count = 0;
    for(auto it = order.rbegin(); it != order.rend(); ++it) {
        if(comp[*it] >= 0)
            continue;
        std::vector<int> stack{*it};
        comp[*it] = comp_count;
        while(!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for(int v : rin[u]) {
                if(comp[v] < 0) {
                    comp[v] = comp_count;
                    stack.push_back(v);
                }
            }
        }
        ++comp_count;
    }
    return comp;
}

// Drives the capsule from one node to the next a physics frame at a time.
// Ground rises of at most the step allowance are climbed in place; a bigger
// falloff puts the capsule in the air, where it keeps its altitude until the
// target column and then descends straight down (snapping down at the lip
// would jam the capsule against the cliff face it just left). Returns
// measured frames, or -1 when the edge cannot be completed.
int walk_edge(const LevelGeometry& level, const GraphBuildParams& p, const Vec3& from,
              const Vec3& to) {
    double step = p.agent.speed / p.agent.tick_rate;
    int cap = int(4.0 * dist_xy(from, to) / step) + 60;
    Vec3 pos = from;
    int frames = 0;
    while(true) {
        double d = dist_xy(pos, to);
        if(d <= step) {
            ++frames;
            double drop = pos.z - to.z;
            if(drop > p.step_allowance + 1e-9) {
                // airborne arrival: hop over the node column and fall
                if(drop > p.max_drop + 1e-9)
                    return -1;
                Vec3 over{to.x, to.y, pos.z};
                if(!capsule_ok(level, p.agent, over))
                    return -1;
                int m = std::max(2, int(std::ceil(drop / p.agent.radius)));
                for(int i = 1; i < m; ++i) {
                    Vec3 mid{to.x, to.y, pos.z - drop * i / m};
                    if(!capsule_ok(level, p.agent, mid))
                        return -1;
                }
            } else if(std::abs(drop) > p.step_allowance + 1e-9) {
                return -1; // arrived under the target floor
            }
            return frames;
        }
        double nx = pos.x + (to.x - pos.x) / d * step;
        double ny = pos.y + (to.y - pos.y) / d * step;
        auto gz = geometry::ground_height(level, nx, ny, pos.z, p.step_allowance, p.max_drop);
        if(!gz)
            return -1;
        double nz = *gz;
        if(pos.z - nz > p.step_allowance)
            nz = pos.z; // ground fell away; stay at altitude until the drop point
        Vec3 next{nx, ny, nz};
        if(!capsule_ok(level, p.agent, next))
            return -1;
        pos = next;
        if(++frames > cap)
            return -1;
    }
}

// A dropped agent walks off the lip and falls; the path down must be solid-free.
bool descent_clear(const LevelGeometry& level, const AgentSpec& agent, const Vec3& from,
                   const Vec3& to) {
    Vec3 over{to.x, to.y, from.z};
    double run = dist_xy(from, over);
    int k = std::max(2, int(std::ceil(run / agent.radius)));
    for(int i = 1; i <= k; ++i) {
        if(!capsule_ok(level, agent, lerp(from, over, double(i) / k)))
            return false;
    }
    double drop = from.z - to.z;
    int m = std::max(2, int(std::ceil(drop / agent.radius)));
    for(int i = 1; i < m; ++i) {
        Vec3 pos{to.x, to.y, from.z - drop * i / m};
        if(!capsule_ok(level, agent, pos))
            return false;
    }
    return true;
}

} // namespace

WaypointGraph generate_bfs(const LevelGeometry& level, const GraphBuildParams& params,
                           BuildReport* report) {
    check_params(params);
    WaypointGraph g;
    g.spacing = params.spacing;
    Builder b(level, params, g);

    for(const Vec3& seed : level.waypoint_seeds) {
        auto gp = b.snap_to_ground(seed);
        if(!gp || !capsule_ok(level, params.agent, *gp))
            continue;
        if(b.hash.nearest_within(g, *gp, 0.5 * params.spacing, params.step_allowance) >= 0)
            continue;
        b.create_node(*gp);
    }
    require(g.node_count() > 0, Errc::validation,
            "waypoint generation: no seed has reachable standing room");
    b.expand();

    int injected = 0, skipped = 0;
    for(const Vec3& mw : level.manual_waypoints) {
        auto gp = b.snap_to_ground(mw);
        if(!gp || !capsule_ok(level, params.agent, *gp) ||
           b.hash.nearest_within(g, *gp, 0.5 * params.spacing, params.step_allowance) >= 0) {
            ++skipped;
            continue;
        }
        int id = b.create_node(*gp);
        ++injected;
        // Stitch to the closest reachable nodes before resuming expansion.
        auto near = b.hash.collect_within(g, *gp, 2.0 * params.spacing, params.step_allowance,
                                          params.step_allowance);
        std::vector<std::pair<double, int>> ranked;
        for(int v : near)
            if(v != id)
                ranked.emplace_back(dist_xy(*gp, g.nodes[v].pos), v);
        std::sort(ranked.begin(), ranked.end());
        int linked = 0;
        for(auto& [d, v] : ranked) {
            (void)d;
            if(linked >= COMPASS_COUNT)
                break;
            if(rays_clear(level, params.agent, *gp, g.nodes[v].pos)) {
                b.connect(id, v);
                ++linked;
            }
        }
        b.expand();
    }

    g.touch();
    if(report) {
        report->bfs_nodes = g.node_count();
        report->bfs_edges = g.edge_count();
        report->manual_injected = injected;
        report->manual_skipped = skipped;
    }
    return g;
}

int add_drop_edges(WaypointGraph& g, const LevelGeometry& level, const GraphBuildParams& params) {
    check_params(params);
    NodeHash hash(0.5 * params.spacing);
    for(const Waypoint& w : g.nodes)
        hash.insert(w.id, w.pos);

    int added = 0;
    for(int u = 0; u < g.node_count(); ++u) {
        const Vec3& up = g.nodes[u].pos;
        // candidates below: deeper than a step, at most max_drop down
        for(int v : hash.collect_within(g, up, params.spacing, params.max_drop, 0.0)) {
            const Vec3& vp = g.nodes[v].pos;
            double depth = up.z - vp.z;
            if(depth <= params.step_allowance || depth > params.max_drop)
                continue;
            double dxy = dist_xy(up, vp);
            if(dxy <= 1e-9 || dxy > params.spacing)
                continue;
            if(g.find_edge(u, v))
                continue;
            if(!descent_clear(level, params.agent, up, vp))
                continue;
            g.add_edge(u, v, direction_label(up, vp), frame_estimate(dxy, params.agent));
            ++added;
        }
    }
    g.touch();
    return added;
}

VerifyStats verify_edges(WaypointGraph& g, const LevelGeometry& level,
                         const GraphBuildParams& params) {
    check_params(params);
    VerifyStats stats;
    stats.edges_checked = g.edge_count();

    for(int u = 0; u < g.node_count(); ++u) {
        std::vector<Edge> kept;
        for(Edge e : g.out[u]) {
            int frames = walk_edge(level, params, g.nodes[e.from].pos, g.nodes[e.to].pos);
            if(frames < 0) {
                ++stats.edges_removed;
                continue;
            }
            e.frames = frames;
            kept.push_back(e);
        }
        g.out[u] = std::move(kept);
    }

    int comp_count = 0;
    std::vector<int> comp = strongly_connected_components(g, comp_count);
    std::vector<int> size(comp_count, 0);
    std::vector<int> min_id(comp_count, g.node_count());
    for(int i = 0; i < g.node_count(); ++i) {
        ++size[comp[i]];
        min_id[comp[i]] = std::min(min_id[comp[i]], i);
    }
    int keep = 0;
    for(int c = 1; c < comp_count; ++c) {
        if(size[c] > size[keep] || (size[c] == size[keep] && min_id[c] < min_id[keep]))
            keep = c;
    }
    require(2 * size[keep] >= g.node_count(), Errc::validation,
            "verify_edges: largest connected region covers only " + std::to_string(size[keep]) +
                " of " + std::to_string(g.node_count()) + " nodes");
    require(size[keep] >= 2, Errc::validation, "verify_edges: graph collapsed");

    std::vector<int> remap(g.node_count(), -1);
    int next = 0;
    for(int i = 0; i < g.node_count(); ++i)
        if(comp[i] == keep)
            remap[i] = next++;
    stats.nodes_pruned = g.node_count() - next;

    WaypointGraph pruned;
    pruned.spacing = g.spacing;
    for(int i = 0; i < g.node_count(); ++i)
        if(remap[i] >= 0)
            pruned.add_node(g.nodes[i].pos);
    for(int u = 0; u < g.node_count(); ++u) {
        if(remap[u] < 0)
            continue;
        for(const Edge& e : g.out[u])
            if(remap[e.to] >= 0)
                pruned.add_edge(remap[u], remap[e.to], e.dir, e.frames);
    }
    g = std::move(pruned);
    g.touch();
    return stats;
}

WaypointGraph build_graph(const LevelGeometry& level, const GraphBuildParams& params,
                          BuildReport* report) {
    BuildReport local;
    WaypointGraph g = generate_bfs(level, params, &local);
    local.drop_edges = add_drop_edges(g, level, params);
    VerifyStats vs = verify_edges(g, level, params);
    local.edges_removed = vs.edges_removed;
    local.nodes_pruned = vs.nodes_pruned;
    if(report)
        *report = local;
    return g;
}

} // namespace decoy::waypoint
