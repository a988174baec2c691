#include "waypoint/builder.hpp"
#include "waypoint/compass.hpp"
#include "waypoint/graph.hpp"

#include "core/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace decoy;
using namespace decoy::waypoint;

namespace {

WaypointGraph build_fixture(const std::string& name, BuildReport* report = nullptr) {
    auto lv = geometry::load_level(testsupport::fixture_map(name));
    return build_graph(lv, GraphBuildParams{}, report);
}

int count_in_region(const WaypointGraph& g, const geometry::Aabb& region) {
    int n = 0;
    for(const auto& node : g.nodes)
        if(geometry::region_contains(region, node.pos))
            ++n;
    return n;
}

int count_steep_down_edges(const WaypointGraph& g) {
    int n = 0;
    for(const auto& edges : g.out)
        for(const auto& e : edges)
            if(g.nodes[e.from].pos.z - g.nodes[e.to].pos.z > 0.45)
                ++n;
    return n;
}

} // namespace

TEST_CASE("compass directions and labels") {
    SUBCASE("opposites") {
        CHECK(opposite(CompassDir::N) == CompassDir::S);
        CHECK(opposite(CompassDir::NE) == CompassDir::SW);
        CHECK(opposite(CompassDir::E) == CompassDir::W);
        for(int i = 0; i < COMPASS_COUNT; ++i)
            CHECK(opposite(opposite(CompassDir(i))) == CompassDir(i));
    }
    SUBCASE("lattice offsets") {
        int dx = 0, dy = 0;
        dir_offset(CompassDir::N, dx, dy);
        CHECK(dx == 0);
        CHECK(dy == 1);
        dir_offset(CompassDir::SE, dx, dy);
        CHECK(dx == 1);
        CHECK(dy == -1);
        dir_offset(CompassDir::W, dx, dy);
        CHECK(dx == -1);
        CHECK(dy == 0);
    }
    SUBCASE("bearings") {
        CHECK(dir_bearing_deg(CompassDir::N) == 0.0);
        CHECK(dir_bearing_deg(CompassDir::NE) == 45.0);
        CHECK(dir_bearing_deg(CompassDir::W) == 270.0);
    }
    SUBCASE("names round-trip") {
        for(int i = 0; i < COMPASS_COUNT; ++i)
            CHECK(dir_from_name(dir_name(CompassDir(i))) == CompassDir(i));
        CHECK_THROWS_AS(dir_from_name("NNE"), Error);
    }
    SUBCASE("displacement snapping") {
        CHECK(direction_label({0, 0, 0}, {0, 1, 0}) == CompassDir::N);
        CHECK(direction_label({0, 0, 0}, {1, 1, 0}) == CompassDir::NE);
        CHECK(direction_label({0, 0, 0}, {1, -1, 5}) == CompassDir::SE); // z ignored
        CHECK(direction_label({0, 0, 0}, {-1, 0.01, 0}) == CompassDir::W);
        // either side of the 22.5-degree sector boundary
        double lo = 22.4 * M_PI / 180.0, hi = 22.6 * M_PI / 180.0;
        CHECK(direction_label({0, 0, 0}, {std::sin(lo), std::cos(lo), 0}) == CompassDir::N);
        CHECK(direction_label({0, 0, 0}, {std::sin(hi), std::cos(hi), 0}) == CompassDir::NE);
        CHECK_THROWS_AS(direction_label({0, 0, 0}, {1e-10, 0, 0}), Error);
    }
}

TEST_CASE("graph editing keeps adjacency ordered and unique") {
    WaypointGraph g;
    int a = g.add_node({0, 0, 0});
    int b = g.add_node({0.7, 0, 0});
    int c = g.add_node({1.4, 0, 0});
    CHECK(a == 0);
    CHECK(c == 2);
    g.add_edge(a, c, CompassDir::E, 18);
    g.add_edge(a, b, CompassDir::E, 9);
    g.add_edge(b, a, CompassDir::W, 9);
    CHECK(g.edge_count() == 3);

    // sorted by target id regardless of insertion order
    CHECK(g.out[a][0].to == b);
    CHECK(g.out[a][1].to == c);

    const Edge* e = g.find_edge(a, b);
    REQUIRE(e != nullptr);
    CHECK(e->frames == 9);
    CHECK(g.find_edge(b, c) == nullptr);

    CHECK_THROWS_AS(g.add_edge(a, b, CompassDir::E, 5), Error);
    CHECK_THROWS_AS(g.add_edge(a, 99, CompassDir::E, 5), Error);
    CHECK_THROWS_AS(g.check_node(-1, "test"), Error);
}

TEST_CASE("edge_in_dir prefers the most level edge, then the smaller id") {
    WaypointGraph g;
    int a = g.add_node({0, 0, 0});
    int drop = g.add_node({0.7, 0, -1.0});
    int level = g.add_node({0.7, 0.01, 0});
    int twin = g.add_node({0.7, -0.01, 0});
    g.add_edge(a, drop, CompassDir::E, 30);
    g.add_edge(a, level, CompassDir::E, 9);
    g.add_edge(a, twin, CompassDir::E, 9);

    const Edge* e = g.edge_in_dir(a, CompassDir::E);
    REQUIRE(e != nullptr);
    CHECK(e->to == level); // flattest wins; `level` beats `twin` by id
    CHECK(g.edge_in_dir(a, CompassDir::N) == nullptr);
}

TEST_CASE("nearest_waypoint agrees with the linear scan") {
    Rng rng(20260810);
    WaypointGraph g;
    for(int i = 0; i < 150; ++i)
        g.add_node({rng.uniform(0, 20), rng.uniform(0, 20), rng.uniform(0, 3)});

    for(int q = 0; q < 300; ++q) {
        Vec3 p{rng.uniform(-2, 22), rng.uniform(-2, 22), rng.uniform(-1, 4)};
        CHECK(nearest_waypoint(g, p) == testoracle::nearest_node(g, p));
        CHECK(nearest_waypoint(g, p, 0.25) == testoracle::nearest_node(g, p, 0.25));
    }

    SUBCASE("elevation weight matters") {
        WaypointGraph h;
        int low = h.add_node({0, 0, 0});
        int high = h.add_node({0.5, 0, 2});
        // directly under `high`: xy favors it, the z penalty does not
        CHECK(nearest_waypoint(h, {0.5, 0, 0}, 2.0) == low);
        CHECK(nearest_waypoint(h, {0.5, 0, 0}, 0.01) == high);
    }
    SUBCASE("exact tie goes to the lower id") {
        WaypointGraph h;
        h.add_node({1, 0, 0});
        h.add_node({-1, 0, 0});
        CHECK(nearest_waypoint(h, {0, 0, 0}) == 0);
        CHECK(nearest_waypoint(h, {0, 5, 0}) == 0);
    }
}

TEST_CASE("shortest_path matches Bellman-Ford costs on random graphs") {
    Rng rng(20260811);
    for(int trial = 0; trial < 20; ++trial) {
        WaypointGraph g;
        const int n = 30;
        for(int i = 0; i < n; ++i)
            g.add_node({rng.uniform(0, 10), rng.uniform(0, 10), 0});
        for(int i = 0; i < n; ++i)
            for(int j = 0; j < n; ++j)
                if(i != j && rng.uniform01() < 0.12)
                    g.add_edge(i, j, CompassDir::N, 1 + int(rng.below(20)));

        for(int q = 0; q < 5; ++q) {
            int a = int(rng.below(n)), b = int(rng.below(n));
            long want = testoracle::shortest_frames(g, a, b);
            if(want < 0) {
                CHECK_THROWS_AS(shortest_path(g, a, b), Error);
                continue;
            }
            auto path = shortest_path(g, a, b);
            REQUIRE(!path.empty());
            CHECK(path.front() == a);
            CHECK(path.back() == b);
            // a real walk through existing edges, at the optimal cost
            CHECK(testoracle::path_frames(g, path) == want);
        }
    }

    SUBCASE("equal-cost diamond picks the lexicographically smaller route") {
        WaypointGraph g;
        for(int i = 0; i < 4; ++i)
            g.add_node({double(i), 0, 0});
        g.add_edge(0, 1, CompassDir::E, 5);
        g.add_edge(0, 2, CompassDir::E, 5);
        g.add_edge(1, 3, CompassDir::E, 5);
        g.add_edge(2, 3, CompassDir::E, 5);
        CHECK(shortest_path(g, 0, 3) == std::vector<int>{0, 1, 3});
    }
    SUBCASE("trivial and impossible queries") {
        WaypointGraph g;
        g.add_node({0, 0, 0});
        g.add_node({5, 0, 0});
        CHECK(shortest_path(g, 0, 0) == std::vector<int>{0});
        CHECK_THROWS_AS(shortest_path(g, 0, 1), Error);
    }
}

TEST_CASE("graph serialization round-trips byte for byte") {
    WaypointGraph g = build_fixture("flat_room");
    std::string text = serialize_graph(g);
    WaypointGraph back = parse_graph(text, "roundtrip");
    CHECK(back.node_count() == g.node_count());
    CHECK(back.edge_count() == g.edge_count());
    CHECK(serialize_graph(back) == text);

    testsupport::TempDir tmp("graph");
    save_graph(tmp.file("g.json"), g);
    WaypointGraph loaded = load_graph(tmp.file("g.json"));
    CHECK(serialize_graph(loaded) == text);

    SUBCASE("parse failures name the source") {
        try {
            parse_graph("{ not json", "unit-under-test");
            FAIL("expected a parse error");
        } catch(const Error& e) {
            CHECK(e.code() == Errc::parse);
            CHECK(std::string(e.what()).find("unit-under-test") != std::string::npos);
        }
    }
}

TEST_CASE("open floor builds a full lattice with no repairs") {
    BuildReport r;
    WaypointGraph g = build_fixture("flat_room", &r);
    CHECK(g.node_count() == 121); // 11x11 lattice at 0.7 m over an 8x8 room
    CHECK(g.edge_count() == 840);
    CHECK(r.bfs_nodes == 121);
    CHECK(r.bfs_edges == 840);
    CHECK(r.manual_injected == 0);
    CHECK(r.manual_skipped == 0);
    CHECK(r.drop_edges == 0);
    CHECK(r.edges_removed == 0);
    CHECK(r.nodes_pruned == 0);
    for(const auto& n : g.nodes)
        CHECK(n.pos.z == 0.0);
    CHECK(testoracle::single_scc(g));

    SUBCASE("measured traversal frames on flat ground") {
        int a = nearest_waypoint(g, {4, 4, 0});
        int e = nearest_waypoint(g, {4.7, 4, 0});
        int ne = nearest_waypoint(g, {4.7, 4.7, 0});
        const Edge* straight = g.find_edge(a, e);
        const Edge* diagonal = g.find_edge(a, ne);
        REQUIRE(straight != nullptr);
        REQUIRE(diagonal != nullptr);
        CHECK(straight->frames == 9);  // 0.70 m at 0.0793 m per tick
        CHECK(diagonal->frames == 13); // 0.99 m
        CHECK(straight->dir == CompassDir::E);
        CHECK(diagonal->dir == CompassDir::NE);
    }
    SUBCASE("building twice is deterministic") {
        CHECK(serialize_graph(build_fixture("flat_room")) == serialize_graph(g));
    }
}

TEST_CASE("arena lattice is fully connected") {
    BuildReport r;
    WaypointGraph g = build_fixture("arena", &r);
    CHECK(g.node_count() == 841);
    CHECK(g.edge_count() == 6384);
    CHECK(r.edges_removed == 0);
    CHECK(testoracle::single_scc(g));
}

TEST_CASE("two_rooms routes through the doorway") {
    BuildReport r;
    WaypointGraph g = build_fixture("two_rooms", &r);
    CHECK(g.node_count() == 421);
    CHECK(g.edge_count() == 3032);
    CHECK(r.nodes_pruned == 0);
    CHECK(testoracle::single_scc(g));

    // the wall column only has a node inside the doorway
    int door = nearest_waypoint(g, {9.9, 5.0, 0});
    CHECK(dist_xy(g.nodes[door].pos, {9.9, 5.0, 0}) < 1e-9);
    for(const auto& n : g.nodes)
        if(std::abs(n.pos.x - 9.9) < 1e-9)
            CHECK(std::abs(n.pos.y - 5.0) < 1e-9);

    int west = nearest_waypoint(g, {2, 5, 0});
    int east = nearest_waypoint(g, {18, 5, 0});
    auto path = shortest_path(g, west, east);
    CHECK(std::find(path.begin(), path.end(), door) != path.end());
    CHECK(testoracle::path_frames(g, path) == testoracle::shortest_frames(g, west, east));
}

TEST_CASE("torso-height bar survives sight checks but fails the walk") {
    BuildReport r;
    WaypointGraph g = build_fixture("rail_bar", &r);
    // the first pass links across the bar (rays at torso and head height
    // clear it); the capsule walk then strips every crossing
    CHECK(r.bfs_edges == 1072);
    CHECK(r.edges_removed == 42);
    CHECK(r.nodes_pruned == 0);
    CHECK(g.node_count() == 153);
    CHECK(g.edge_count() == 1030);
    CHECK(testoracle::single_scc(g));

    int west = nearest_waypoint(g, {5.8, 0.9, 0});
    int east = nearest_waypoint(g, {6.5, 0.9, 0});
    CHECK(g.find_edge(west, east) == nullptr);
    // still mutually reachable, via the open north end of the bar
    long frames = testoracle::shortest_frames(g, west, east);
    CHECK(frames > 60); // direct hop would be 9
    CHECK(testoracle::path_frames(g, shortest_path(g, west, east)) == frames);
}

TEST_CASE("deck with a ramp keeps one-way drops off the lip") {
    BuildReport r;
    WaypointGraph g = build_fixture("ledge", &r);
    CHECK(g.node_count() == 231);
    CHECK(r.drop_edges == 6);
    CHECK(r.edges_removed == 38);
    CHECK(r.nodes_pruned == 0);
    CHECK(count_steep_down_edges(g) == 6);
    CHECK(testoracle::single_scc(g));

    int deck_nodes = 0;
    for(const auto& n : g.nodes)
        deck_nodes += n.pos.z == 0.6 ? 1 : 0;
    CHECK(deck_nodes == 55);

    // drops leave the deck lip and are strictly one-way
    int lip = nearest_waypoint(g, {2.9, 4.6, 0.6}, 0.1);
    int below = nearest_waypoint(g, {3.5, 4.6, 0.0}, 0.1);
    CHECK(g.nodes[lip].pos.z == 0.6);
    CHECK(g.nodes[below].pos.z == 0.0);
    const Edge* drop = g.find_edge(lip, below);
    REQUIRE(drop != nullptr);
    CHECK(g.find_edge(below, lip) == nullptr);

    // the ramp still offers a two-way climb
    int floor_east = nearest_waypoint(g, {12, 2, 0});
    auto up = shortest_path(g, floor_east, lip);
    auto down = shortest_path(g, lip, floor_east);
    CHECK(!up.empty());
    CHECK(!down.empty());

    // spawn placement has real waypoints to stand on up there
    auto lv = geometry::load_level(testsupport::fixture_map("ledge"));
    REQUIRE(lv.t_spawns.size() == 1);
    CHECK(count_in_region(g, lv.t_spawns[0]) == 20);
}

TEST_CASE("deck without a ramp gets pruned away") {
    BuildReport r;
    WaypointGraph g = build_fixture("ledge_oneway", &r);
    // drops were created, but a one-way component cannot stay
    CHECK(r.drop_edges == 11);
    CHECK(r.nodes_pruned == 44);
    CHECK(g.node_count() == 143);
    CHECK(testoracle::single_scc(g));
    for(const auto& n : g.nodes)
        CHECK(n.pos.z == 0.0);
}

TEST_CASE("deck above the drop limit gets no drop edges at all") {
    BuildReport r;
    WaypointGraph g = build_fixture("ledge_high", &r);
    CHECK(r.drop_edges == 0);
    CHECK(r.nodes_pruned == 44);
    CHECK(g.node_count() == 143);
    for(const auto& n : g.nodes)
        CHECK(n.pos.z == 0.0);
}

TEST_CASE("unit scale does not leak into the built graph") {
    WaypointGraph a = build_fixture("tiny_u1");
    WaypointGraph b = build_fixture("tiny_u2");
    CHECK(a.node_count() == 75);
    CHECK(a.edge_count() == 466);
    CHECK(serialize_graph(a) == serialize_graph(b));
}

TEST_CASE("manual waypoints inject off-lattice and dedupe on-lattice") {
    BuildReport r;
    WaypointGraph g = build_fixture("manual_room", &r);
    CHECK(r.manual_injected == 1);
    CHECK(r.manual_skipped == 1);
    CHECK(g.node_count() == 220);

    int injected = nearest_waypoint(g, {7.45, 5.45, 0});
    CHECK(dist_xy(g.nodes[injected].pos, {7.45, 5.45, 0}) < 1e-9);
    CHECK(!g.out[injected].empty()); // stitched into its surroundings

    // the duplicate candidate merged into the seed-lattice node at (5, 5):
    // no node was created at its own position
    int merged = nearest_waypoint(g, {5.05, 5.0, 0});
    CHECK(dist_xy(g.nodes[merged].pos, {5.0, 5.0, 0}) < 1e-9);
    for(const auto& n : g.nodes)
        CHECK(dist_xy(n.pos, {5.05, 5.0, 0}) > 0.04);
}

TEST_CASE("the shipped map builds one connected navigation graph") {
    auto lv = geometry::load_level(testsupport::product_map());
    BuildReport r;
    WaypointGraph g = build_graph(lv, GraphBuildParams{}, &r);
    CHECK(g.node_count() == 1707);
    CHECK(g.edge_count() == 12529);
    CHECK(r.drop_edges == 21);
    CHECK(r.edges_removed == 162);
    CHECK(r.nodes_pruned == 0);
    CHECK(testoracle::single_scc(g));

    // both bombsites and both spawn zones are populated
    for(const auto& [name, region] : lv.bombsites)
        CHECK(count_in_region(g, region) > 0);
    CHECK(count_in_region(g, lv.t_spawns[0]) >= 50);
    CHECK(count_in_region(g, lv.ct_spawns[0]) >= 50);

    // the A-site platform is reachable on foot and droppable off the lip
    int site_a = nearest_waypoint(g, {32, 25, 0.6}, 0.1);
    CHECK(g.nodes[site_a].pos.z == doctest::Approx(0.6));
    int t_spawn = nearest_waypoint(g, {5, 14, 0});
    CHECK(!shortest_path(g, t_spawn, site_a).empty());
    CHECK(!shortest_path(g, site_a, t_spawn).empty());
    CHECK(count_steep_down_edges(g) == 21);

    SUBCASE("rebuild is deterministic") {
        WaypointGraph again = build_graph(lv, GraphBuildParams{});
        CHECK(serialize_graph(again) == serialize_graph(g));
    }
    SUBCASE("random path costs match Bellman-Ford") {
        Rng rng(20260812);
        for(int q = 0; q < 12; ++q) {
            int a = int(rng.below(std::uint64_t(g.node_count())));
            int b = int(rng.below(std::uint64_t(g.node_count())));
            long want = testoracle::shortest_frames(g, a, b);
            REQUIRE(want >= 0); // single SCC: everything reaches everything
            CHECK(testoracle::path_frames(g, shortest_path(g, a, b)) == want);
        }
    }
}
