#pragma once

#include "waypoint/compass.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace decoy::waypoint {

struct Waypoint {
    int id = -1;
    Vec3 pos;
};

struct Edge {
    int from = -1;
    int to = -1;
    CompassDir dir = CompassDir::N;
    int frames = 1; // traversal time in physics ticks at the reference speed
};

// Directed navigation graph over waypoints. Node ids are dense indices;
// adjacency lists stay sorted by target id so that iteration order, path
// tie-breaking and serialization are all deterministic.
class WaypointGraph {
  public:
    double spacing = 0.7;
    std::vector<Waypoint> nodes;
    std::vector<std::vector<Edge>> out;

    int node_count() const { return int(nodes.size()); }
    int edge_count() const;

    int add_node(const Vec3& pos);
    // Keeps adjacency sorted; rejects duplicate (from, to) pairs.
    void add_edge(int from, int to, CompassDir dir, int frames);
    const Edge* find_edge(int from, int to) const;

    // Edge to follow for a move action. When several edges leave `from` with
    // the same label (a walk edge and a drop edge can share one), the most
    // level one wins, then the smaller target id.
    const Edge* edge_in_dir(int from, CompassDir dir) const;

    void check_node(int id, const char* what) const;

    // Invalidates the spatial index; call after bulk node edits.
    void touch() { m_index.reset(); }

  private:
    struct NearestIndex {
        double cell = 1.0;
        std::unordered_map<std::int64_t, std::vector<int>> cells;
    };
    mutable std::optional<NearestIndex> m_index;

    const NearestIndex& index() const;

    friend int nearest_waypoint(const WaypointGraph&, const Vec3&, double);
};

// Elevation-weighted nearest node: minimizes xy distance + wz * |dz|, ties to
// the smallest id. Grid-accelerated but exact.
int nearest_waypoint(const WaypointGraph& g, const Vec3& p, double wz = 2.0);

// Minimum total traversal frames from a to b; among equal-cost paths returns
// the lexicographically smallest id sequence. a == b yields {a}. Throws a
// validation error when b is unreachable.
std::vector<int> shortest_path(const WaypointGraph& g, int a, int b);

// Text form is JSON with one node / edge per line; identical graphs always
// produce identical bytes.
std::string serialize_graph(const WaypointGraph& g);
WaypointGraph parse_graph(const std::string& text, const std::string& ctx);
void save_graph(const std::string& path, const WaypointGraph& g);
WaypointGraph load_graph(const std::string& path);

} // namespace decoy::waypoint
