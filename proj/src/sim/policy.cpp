#include "sim/policy.hpp"

namespace decoy::sim {

AgentAction RandomWalkPolicy::act(const Engine& eng, int agent_id, Rng& rng) {
    const AgentState& a = eng.agents()[agent_id];
    const auto& out = eng.graph().out[a.node];
    require(!out.empty(), Errc::internal,
            "random walk: node " + std::to_string(a.node) + " has no outgoing edges");
    return make_move(out[rng.below(out.size())].dir);
}

RushPolicy::RushPolicy(const geometry::LevelGeometry& level,
                       const waypoint::WaypointGraph& graph) {
    const auto& sites = level.bombsites;
    require(!sites.empty(), Errc::invalid_argument, "rush policy: map has no bombsite");
    const auto& box = sites.front().second;
    Vec3 center{(box.lo.x + box.hi.x) * 0.5, (box.lo.y + box.hi.y) * 0.5, box.lo.z};
    m_target = waypoint::nearest_waypoint(graph, center);
}

AgentAction RushPolicy::act(const Engine& eng, int agent_id, Rng&) {
    const AgentState& a = eng.agents()[agent_id];
    if(a.node == m_target)
        return make_stop();
    std::vector<int> path = waypoint::shortest_path(eng.graph(), a.node, m_target);
    const waypoint::Edge* e = eng.graph().find_edge(path[0], path[1]);
    require(e != nullptr, Errc::internal, "rush policy: path step without an edge");
    return make_move(e->dir);
}

} // namespace decoy::sim
