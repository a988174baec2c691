#pragma once

#include "core/agent_spec.hpp"
#include "geometry/queries.hpp"
#include "waypoint/graph.hpp"

namespace decoy::waypoint {

struct GraphBuildParams {
    double spacing = 0.7;
    double step_allowance = geometry::DEFAULT_STEP_ALLOWANCE;
    double max_drop = geometry::DEFAULT_MAX_DROP;
    AgentSpec agent;
};

struct BuildReport {
    int bfs_nodes = 0;
    int bfs_edges = 0;
    int manual_injected = 0;
    int manual_skipped = 0;
    int drop_edges = 0;
    int edges_removed = 0;
    int nodes_pruned = 0;
};

// Stage 1: flood-fill node placement from the map's seed points. Walkable
// neighbors at lattice offsets get bidirectional edges; manual waypoints are
// injected afterwards and stitched to their surroundings.
WaypointGraph generate_bfs(const geometry::LevelGeometry& level, const GraphBuildParams& params,
                           BuildReport* report = nullptr);

// Stage 2: one-way edges from ledges down to nearby lower nodes that are not
// otherwise connected. Returns the number of edges added.
int add_drop_edges(WaypointGraph& g, const geometry::LevelGeometry& level,
                   const GraphBuildParams& params);

// Stage 3: drives the movement capsule along every edge, records measured
// traversal frames, drops edges the capsule cannot complete, then keeps only
// the largest strongly connected component. Fails when that component covers
// less than half the nodes.
struct VerifyStats {
    int edges_checked = 0;
    int edges_removed = 0;
    int nodes_pruned = 0;
};
VerifyStats verify_edges(WaypointGraph& g, const geometry::LevelGeometry& level,
                         const GraphBuildParams& params);

// All three stages.
WaypointGraph build_graph(const geometry::LevelGeometry& level, const GraphBuildParams& params,
                          BuildReport* report = nullptr);

} // namespace decoy::waypoint
