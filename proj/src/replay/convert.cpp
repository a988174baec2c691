#include "replay/convert.hpp"

namespace decoy::replay {

WaypointTrajectory to_waypoints(const waypoint::WaypointGraph& g,
                                const std::vector<Vec3>& positions, int agent_id,
                                long start_tick) {
    require(!positions.empty(), Errc::invalid_argument, "to_waypoints: empty trajectory");

    WaypointTrajectory wt;
    wt.agent_id = agent_id;
    wt.start_tick = start_tick;

    for(const Vec3& p : positions) {
        int node = waypoint::nearest_waypoint(g, p);
        if(!wt.nodes.empty() && wt.nodes.back() == node) {
            ++wt.dwell.back();
        } else {
            wt.nodes.push_back(node);
            wt.dwell.push_back(1);
        }
    }

    // Repair skipped nodes pair by pair so dwell stays attached to the nodes
    // the recording actually visited.
    std::vector<int> nodes;
    std::vector<int> dwell;
    nodes.push_back(wt.nodes.front());
    dwell.push_back(wt.dwell.front());
    for(std::size_t i = 1; i < wt.nodes.size(); ++i) {
        std::vector<int> seg = fill_gaps(g, {nodes.back(), wt.nodes[i]});
        for(std::size_t k = 1; k < seg.size(); ++k) {
            nodes.push_back(seg[k]);
            dwell.push_back(1);
        }
        dwell.back() = wt.dwell[i];
    }
    wt.nodes = std::move(nodes);
    wt.dwell = std::move(dwell);
    return wt;
}

std::vector<int> fill_gaps(const waypoint::WaypointGraph& g, const std::vector<int>& nodes) {
    require(!nodes.empty(), Errc::invalid_argument, "fill_gaps: empty node list");
    for(int n : nodes)
        g.check_node(n, "fill_gaps");

    std::vector<int> out{nodes.front()};
    for(std::size_t i = 1; i < nodes.size(); ++i) {
        int u = out.back();
        int v = nodes[i];
        if(u == v)
            continue;
        if(g.find_edge(u, v)) {
            out.push_back(v);
        } else {
            std::vector<int> path = waypoint::shortest_path(g, u, v);
            out.insert(out.end(), path.begin() + 1, path.end());
        }
    }
    return out;
}

std::vector<sim::AgentAction> to_actions(const waypoint::WaypointGraph& g,
                                         const WaypointTrajectory& wt) {
    require(wt.nodes.size() == wt.dwell.size() && !wt.nodes.empty(), Errc::invalid_argument,
            "to_actions: malformed trajectory");
    if(wt.nodes.size() == 1)
        return {sim::make_stop()};

    std::vector<sim::AgentAction> actions;
    for(std::size_t i = 0; i + 1 < wt.nodes.size(); ++i) {
        // Arrival at a node consumes one recorded sample; every further
        // sample spent there becomes an explicit stop.
        for(int k = 1; k < wt.dwell[i]; ++k)
            actions.push_back(sim::make_stop());
        const waypoint::Edge* e = g.find_edge(wt.nodes[i], wt.nodes[i + 1]);
        require(e != nullptr, Errc::internal,
                "to_actions: consecutive trajectory nodes " + std::to_string(wt.nodes[i]) +
                    " -> " + std::to_string(wt.nodes[i + 1]) + " share no edge");
        actions.push_back(sim::make_move(e->dir));
    }
    return actions;
}

namespace {

template <typename T, typename Lerp>
std::vector<T> resample_impl(const std::vector<T>& series, int target_len, Lerp mix) {
    require(series.size() >= 2, Errc::invalid_argument,
            "resample: need at least 2 points to interpolate");
    require(target_len >= 2, Errc::invalid_argument, "resample: target length must be >= 2");

    int n = int(series.size());
    std::vector<T> out;
    out.reserve(std::size_t(target_len));
    for(int j = 0; j < target_len; ++j) {
        double t = double(j) * double(n - 1) / double(target_len - 1);
        int i = int(t);
        if(i >= n - 1) {
            out.push_back(series.back());
        } else {
            out.push_back(mix(series[size_t(i)], series[size_t(i) + 1], t - i));
        }
    }
    return out;
}

} // namespace

std::vector<Vec3> resample(const std::vector<Vec3>& series, int target_len) {
    return resample_impl(series, target_len,
                         [](const Vec3& a, const Vec3& b, double f) { return lerp(a, b, f); });
}

std::vector<double> resample(const std::vector<double>& series, int target_len) {
    return resample_impl(series, target_len,
                         [](double a, double b, double f) { return a + (b - a) * f; });
}

} // namespace decoy::replay
