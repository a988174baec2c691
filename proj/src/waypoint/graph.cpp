#include "waypoint/graph.hpp"

#include "core/jsonio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace decoy::waypoint {

namespace {

std::int64_t cell_key(int ix, int iy) {
    return (std::int64_t(ix) << 32) ^ (std::int64_t(iy) & 0xffffffff);
}

int cell_of(double v, double cell) { return int(std::floor(v / cell)); }

} // namespace

int WaypointGraph::edge_count() const {
    int n = 0;
    for(const auto& adj : out)
        n += int(adj.size());
    return n;
}

int WaypointGraph::add_node(const Vec3& pos) {
    int id = int(nodes.size());
    nodes.push_back({id, pos});
    out.emplace_back();
    m_index.reset();
    return id;
}

void WaypointGraph::check_node(int id, const char* what) const {
    require(id >= 0 && id < node_count(), Errc::invalid_argument,
            std::string(what) + ": node id " + std::to_string(id) + " out of range");
}

void WaypointGraph::add_edge(int from, int to, CompassDir dir, int frames) {
    check_node(from, "add_edge");
    check_node(to, "add_edge");
    require(from != to, Errc::invalid_argument, "add_edge: self edge");
    require(frames >= 1, Errc::invalid_argument, "add_edge: frames must be positive");
    auto& adj = out[from];
    auto it = std::lower_bound(adj.begin(), adj.end(), to,
                               [](const Edge& e, int t) { return e.to < t; });
    require(it == adj.end() || it->to != to, Errc::internal, "add_edge: duplicate edge");
    adj.insert(it, Edge{from, to, dir, frames});
}

const Edge* WaypointGraph::find_edge(int from, int to) const {
    check_node(from, "find_edge");
    check_node(to, "find_edge");
    const auto& adj = out[from];
    auto it = std::lower_bound(adj.begin(), adj.end(), to,
                               [](const Edge& e, int t) { return e.to < t; });
    if(it != adj.end() && it->to == to)
        return &*it;
    return nullptr;
}

const Edge* WaypointGraph::edge_in_dir(int from, CompassDir dir) const {
    check_node(from, "edge_in_dir");
    const Edge* best = nullptr;
    double best_dz = 0.0;
    for(const Edge& e : out[from]) {
        if(e.dir != dir)
            continue;
        double dz = std::abs(nodes[e.to].pos.z - nodes[from].pos.z);
        if(!best || dz < best_dz) {
            best = &e;
            best_dz = dz;
        }
    }
    return best;
}

const WaypointGraph::NearestIndex& WaypointGraph::index() const {
    if(!m_index) {
        NearestIndex idx;
        idx.cell = spacing > 0.0 ? spacing : 1.0;
        for(const Waypoint& w : nodes)
            idx.cells[cell_key(cell_of(w.pos.x, idx.cell), cell_of(w.pos.y, idx.cell))].push_back(
                w.id);
        m_index = std::move(idx);
    }
    return *m_index;
}

int nearest_waypoint(const WaypointGraph& g, const Vec3& p, double wz) {
    require(g.node_count() > 0, Errc::invalid_argument, "nearest_waypoint: empty graph");
    const auto& idx = g.index();
    double cell = idx.cell;
    int cx = cell_of(p.x, cell);
    int cy = cell_of(p.y, cell);

    // Widest ring that can still contain an indexed cell.
    int max_r = 0;
    for(const auto& [key, ids] : idx.cells) {
        (void)ids;
        int ix = int(key >> 32);
        int iy = int(std::int32_t(key & 0xffffffff));
        max_r = std::max(max_r, std::max(std::abs(ix - cx), std::abs(iy - cy)));
    }

    int best_id = -1;
    double best_d = std::numeric_limits<double>::infinity();
    auto consider = [&](int ix, int iy) {
        auto it = idx.cells.find(cell_key(ix, iy));
        if(it == idx.cells.end())
            return;
        for(int id : it->second) {
            const Vec3& q = g.nodes[id].pos;
            double dx = p.x - q.x, dy = p.y - q.y;
            double d = std::sqrt(dx * dx + dy * dy) + wz * std::abs(p.z - q.z);
            if(d < best_d || (d == best_d && id < best_id)) {
                best_d = d;
                best_id = id;
            }
        }
    };

    for(int r = 0; r <= max_r; ++r) {
        if(r == 0) {
            consider(cx, cy);
        } else {
            for(int ix = cx - r; ix <= cx + r; ++ix) {
                consider(ix, cy - r);
                consider(ix, cy + r);
            }
            for(int iy = cy - r + 1; iy <= cy + r - 1; ++iy) {
                consider(cx - r, iy);
                consider(cx + r, iy);
            }
        }
        // Any node in a farther ring is at least r * cell away horizontally.
        if(best_id >= 0 && best_d <= double(r) * cell)
            break;
    }
    return best_id;
}

std::vector<int> shortest_path(const WaypointGraph& g, int a, int b) {
    g.check_node(a, "shortest_path");
    g.check_node(b, "shortest_path");
    if(a == b)
        return {a};

    // Cost-to-target via Dijkstra on reversed edges, then a greedy forward
    // walk that always takes the smallest-id optimal successor. That yields
    // the lexicographically smallest id sequence among minimum-cost paths.
    std::vector<std::vector<std::pair<int, int>>> rev(g.node_count());
    for(const auto& adj : g.out)
        for(const Edge& e : adj)
            rev[e.to].emplace_back(e.from, e.frames);

    constexpr std::int64_t INF = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> dist(g.node_count(), INF);
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[b] = 0;
    heap.emplace(0, b);
    while(!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if(d != dist[u])
            continue;
        for(auto [v, w] : rev[u]) {
            if(d + w < dist[v]) {
                dist[v] = d + w;
                heap.emplace(dist[v], v);
            }
        }
    }
    require(dist[a] != INF, Errc::validation,
            "shortest_path: node " + std::to_string(b) + " unreachable from " + std::to_string(a));

    std::vector<int> path{a};
    int u = a;
    while(u != b) {
        int next = -1;
        for(const Edge& e : g.out[u]) { // sorted by target id
            if(dist[e.to] != INF && dist[u] == e.frames + dist[e.to]) {
                next = e.to;
                break;
            }
        }
        require(next >= 0, Errc::internal, "shortest_path: broken distance field");
        path.push_back(next);
        u = next;
    }
    return path;
}

std::string serialize_graph(const WaypointGraph& g) {
    std::string s;
    s += "{\n";
    s += "  \"format_version\": 1,\n";
    s += "  \"spacing\": " + json(g.spacing).dump() + ",\n";
    s += "  \"nodes\": [";
    for(int i = 0; i < g.node_count(); ++i) {
        const Waypoint& w = g.nodes[i];
        s += i ? ",\n    [" : "\n    [";
        s += std::to_string(w.id) + ", " + json(w.pos.x).dump() + ", " + json(w.pos.y).dump() +
             ", " + json(w.pos.z).dump() + "]";
    }
    s += g.node_count() ? "\n  ],\n" : "],\n";
    s += "  \"edges\": [";
    bool first = true;
    for(const auto& adj : g.out) {
        for(const Edge& e : adj) {
            s += first ? "\n    [" : ",\n    [";
            first = false;
            s += std::to_string(e.from) + ", " + std::to_string(e.to) + ", \"" + dir_name(e.dir) +
                 "\", " + std::to_string(e.frames) + "]";
        }
    }
    s += first ? "]\n" : "\n  ]\n";
    s += "}\n";
    return s;
}

WaypointGraph parse_graph(const std::string& text, const std::string& ctx) {
    json j;
    try {
        j = json::parse(text);
    } catch(const json::parse_error& e) {
        raise(Errc::parse, ctx + ": " + e.what());
    }
    WaypointGraph g;
    g.spacing = field_as<double>(j, "spacing", ctx);
    require(g.spacing > 0.0, Errc::validation, ctx + ": spacing must be positive");

    const json& nodes = field_as<json>(j, "nodes", ctx);
    for(std::size_t i = 0; i < nodes.size(); ++i) {
        const json& n = nodes[i];
        if(!n.is_array() || n.size() != 4)
            raise(Errc::parse, ctx + ": nodes[" + std::to_string(i) + "] malformed");
        if(n[0].get<int>() != int(i))
            raise(Errc::validation, ctx + ": node ids must be dense and ordered");
        g.add_node({n[1].get<double>(), n[2].get<double>(), n[3].get<double>()});
    }

    const json& edges = field_as<json>(j, "edges", ctx);
    for(std::size_t i = 0; i < edges.size(); ++i) {
        const json& e = edges[i];
        if(!e.is_array() || e.size() != 4)
            raise(Errc::parse, ctx + ": edges[" + std::to_string(i) + "] malformed");
        int from = e[0].get<int>();
        int to = e[1].get<int>();
        CompassDir dir = dir_from_name(e[2].get<std::string>());
        int frames = e[3].get<int>();
        if(from < 0 || from >= g.node_count() || to < 0 || to >= g.node_count())
            raise(Errc::validation, ctx + ": edges[" + std::to_string(i) + "] references missing node");
        if(frames < 1)
            raise(Errc::validation, ctx + ": edges[" + std::to_string(i) + "] has non-positive frames");
        g.add_edge(from, to, dir, frames);
    }
    g.touch();
    return g;
}

void save_graph(const std::string& path, const WaypointGraph& g) {
    write_text_file(path, serialize_graph(g));
}

WaypointGraph load_graph(const std::string& path) {
    return parse_graph(read_text_file(path), path);
}

} // namespace decoy::waypoint
