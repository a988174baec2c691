#include "geometry/level.hpp"
#include "geometry/queries.hpp"

#include "core/rng.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace decoy;
using namespace decoy::geometry;

namespace {

// Minimal in-memory level for query tests; spawns and sites are irrelevant
// to raycast / capsule / ground queries.
LevelGeometry make_level(std::vector<Aabb> boxes) {
    LevelGeometry lv;
    lv.name = "synthetic";
    lv.boxes = std::move(boxes);
    return lv;
}

Vec3 normalized(const Vec3& v) { return v * (1.0 / norm(v)); }

} // namespace

TEST_CASE("load_level reads a map and scales engine units to meters") {
    LevelGeometry lv = load_level(testsupport::fixture_map("flat_room"));
    CHECK(lv.name == "flat_room");
    CHECK(lv.unit_scale == 1.0);
    REQUIRE(lv.boxes.size() == 1);
    CHECK(lv.boxes[0].lo == Vec3{0, 0, -1});
    CHECK(lv.boxes[0].hi == Vec3{8, 8, 0});
    REQUIRE(lv.t_spawns.size() == 1);
    REQUIRE(lv.ct_spawns.size() == 1);
    CHECK(lv.t_spawns[0].hi == Vec3{3, 7.6, 0});
    REQUIRE(lv.bombsites.size() == 1);
    CHECK(lv.bombsites[0].first == "A");
    CHECK(lv.bombsites[0].second.lo == Vec3{3.2, 3.2, -0.5});
    REQUIRE(lv.waypoint_seeds.size() == 1);
    CHECK(lv.waypoint_seeds[0] == Vec3{4, 4, 0.2});
    CHECK(lv.manual_waypoints.empty());
    CHECK(lv.spawns(Team::T)[0].lo == lv.t_spawns[0].lo);
    CHECK(lv.spawns(Team::CT)[0].lo == lv.ct_spawns[0].lo);
}

TEST_CASE("unit_scale produces identical levels for rescaled coordinates") {
    // tiny_u2 is tiny_u1 with every coordinate doubled and unit_scale halved.
    // Scaling by 0.5 is exact in binary, so the loaded levels must match
    // bit for bit, not just approximately.
    LevelGeometry a = load_level(testsupport::fixture_map("tiny_u1"));
    LevelGeometry b = load_level(testsupport::fixture_map("tiny_u2"));
    REQUIRE(a.boxes.size() == b.boxes.size());
    for(std::size_t i = 0; i < a.boxes.size(); ++i) {
        CHECK(a.boxes[i].lo == b.boxes[i].lo);
        CHECK(a.boxes[i].hi == b.boxes[i].hi);
    }
    REQUIRE(a.t_spawns.size() == b.t_spawns.size());
    CHECK(a.t_spawns[0].lo == b.t_spawns[0].lo);
    CHECK(a.t_spawns[0].hi == b.t_spawns[0].hi);
    CHECK(a.bombsites[0].second.hi == b.bombsites[0].second.hi);
    CHECK(a.waypoint_seeds[0] == b.waypoint_seeds[0]);
}

TEST_CASE("load_level rejects malformed and invalid maps") {
    SUBCASE("degenerate box") {
        try {
            load_level(testsupport::fixture_map("bad_box"));
            FAIL("expected a validation error");
        } catch(const Error& e) {
            CHECK(e.code() == Errc::validation);
            CHECK(std::string(e.what()).find("boxes[1]") != std::string::npos);
            CHECK(std::string(e.what()).find("non-positive extent") != std::string::npos);
        }
    }
    SUBCASE("spawn region outside the level") {
        try {
            load_level(testsupport::fixture_map("bad_spawn"));
            FAIL("expected a validation error");
        } catch(const Error& e) {
            CHECK(e.code() == Errc::validation);
            CHECK(std::string(e.what()).find("outside the level bounds") != std::string::npos);
        }
    }
    SUBCASE("truncated file") {
        try {
            load_level(testsupport::fixture_map("bad_syntax"));
            FAIL("expected a parse error");
        } catch(const Error& e) {
            CHECK(e.code() == Errc::parse);
            // message carries file:line so the user can find the spot
            CHECK(std::string(e.what()).find("bad_syntax.json:") != std::string::npos);
        }
    }
    SUBCASE("missing file") {
        try {
            load_level(testsupport::fixture_map("no_such_map"));
            FAIL("expected an io error");
        } catch(const Error& e) {
            CHECK(e.code() == Errc::io);
        }
    }
}

TEST_CASE("level_bounds encloses exactly the solid boxes") {
    LevelGeometry lv = load_level(testsupport::fixture_map("tiny_u1"));
    Aabb b = level_bounds(lv);
    CHECK(b.lo == Vec3{0, 0, -1});
    CHECK(b.hi == Vec3{6, 6, 1.4});
}

TEST_CASE("the shipped map loads clean") {
    LevelGeometry lv = load_level(testsupport::product_map());
    CHECK(lv.name == "de_mini");
    CHECK(lv.boxes.size() == 54);
    CHECK(lv.bombsites.size() == 2);
    Aabb b = level_bounds(lv);
    CHECK(b.hi.x == doctest::Approx(36.0));
    CHECK(b.hi.y == doctest::Approx(28.0));
    CHECK(b.hi.z == doctest::Approx(3.0));
}

TEST_CASE("raycast reports the first face along the ray") {
    LevelGeometry lv = make_level({{{1, -1, -1}, {2, 1, 1}}});

    SUBCASE("axis-aligned hit") {
        auto hit = raycast(lv, {0, 0, 0}, {1, 0, 0}, 10.0);
        REQUIRE(hit.has_value());
        CHECK(hit->distance == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(hit->box_index == 0);
        CHECK(hit->point.x == doctest::Approx(1.0));
    }
    SUBCASE("pointing away misses") {
        CHECK(!raycast(lv, {0, 0, 0}, {-1, 0, 0}, 10.0).has_value());
        CHECK(!raycast(lv, {0, 2, 0}, {1, 0, 0}, 10.0).has_value());
    }
    SUBCASE("range limit cuts the hit off") {
        CHECK(!raycast(lv, {0, 0, 0}, {1, 0, 0}, 0.5).has_value());
        CHECK(raycast(lv, {0, 0, 0}, {1, 0, 0}, 1.0).has_value());
    }
    SUBCASE("origin inside a box hits at distance zero") {
        auto hit = raycast(lv, {1.5, 0, 0}, {0, 1, 0}, 10.0);
        REQUIRE(hit.has_value());
        CHECK(hit->distance == 0.0);
        CHECK(hit->box_index == 0);
    }
    SUBCASE("nearer of two boxes wins") {
        LevelGeometry two = make_level({{{5, -1, -1}, {6, 1, 1}}, {{1, -1, -1}, {2, 1, 1}}});
        auto hit = raycast(two, {0, 0, 0}, {1, 0, 0}, 10.0);
        REQUIRE(hit.has_value());
        CHECK(hit->box_index == 1);
        CHECK(hit->distance == doctest::Approx(1.0));
    }
    SUBCASE("direction must be unit length") {
        CHECK_THROWS_AS(raycast(lv, {0, 0, 0}, {1, 1, 0}, 10.0), Error);
        CHECK_THROWS_AS(raycast(lv, {0, 0, 0}, {1, 0, 0}, -1.0), Error);
    }
}

TEST_CASE("raycast hits sampled face points at the sampled distance") {
    // Constructed truth: aim at a point known to lie on the near face of the
    // only box. The first intersection must be that point, so the reported
    // distance equals the origin-to-target distance with no geometry model
    // shared with the implementation.
    Rng rng(20260801);
    for(int iter = 0; iter < 200; ++iter) {
        Vec3 lo{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        Vec3 hi = lo + Vec3{rng.uniform(0.5, 4), rng.uniform(0.5, 4), rng.uniform(0.5, 4)};
        LevelGeometry lv = make_level({{lo, hi}});

        // sample a point on the -x face, away from the edges
        Vec3 target{lo.x, rng.uniform(lo.y + 0.05, hi.y - 0.05),
                    rng.uniform(lo.z + 0.05, hi.z - 0.05)};
        // back off along a direction with a negative x component
        Vec3 away = normalized({-rng.uniform(0.3, 1.0), rng.uniform(-1, 1), rng.uniform(-1, 1)});
        double back = rng.uniform(0.5, 6.0);
        Vec3 origin = target + away * back;
        Vec3 dir = normalized(target - origin);

        auto hit = raycast(lv, origin, dir, back + 1.0);
        REQUIRE(hit.has_value());
        CHECK(hit->distance == doctest::Approx(back).epsilon(1e-9));
        CHECK(hit->box_index == 0);
        CHECK(!raycast(lv, origin, dir, back - 0.01).has_value());
        CHECK(!raycast(lv, origin, normalized(origin - target), 50.0).has_value());
    }
}

TEST_CASE("capsule_free matches hand-checked clearances") {
    // Player capsule as used by the movement code: radius 0.3, height 1.37,
    // stood 0.02 above the floor.
    const double r = 0.3, h = 1.37;
    LevelGeometry floor = make_level({{{0, 0, -1}, {8, 8, 0}}});

    SUBCASE("standing on open floor") {
        CHECK(capsule_free(floor, {4, 4, 0.02}, r, h));
        // surface contact still counts as free, sinking in does not
        CHECK(capsule_free(floor, {4, 4, 0.0}, r, h));
        CHECK(!capsule_free(floor, {4, 4, -0.005}, r, h));
    }
    SUBCASE("a 1.5cm curb fits under the bottom cap") {
        LevelGeometry lv = make_level({{{0, 0, -1}, {8, 8, 0}}, {{4.5, 0, 0}, {6, 8, 0.015}}});
        // even directly over the curb edge the cap clears it
        CHECK(capsule_free(lv, {4.5, 4, 0.02}, r, h));
        CHECK(capsule_free(lv, {4.6, 4, 0.02}, r, h));
    }
    SUBCASE("a tall riser blocks anything inside one radius") {
        LevelGeometry lv = make_level({{{0, 0, -1}, {8, 8, 0}}, {{4.5, 0, 0}, {6, 8, 0.4}}});
        CHECK(capsule_free(lv, {4.19, 4, 0.02}, r, h));  // axis 0.31 from the face
        CHECK(!capsule_free(lv, {4.21, 4, 0.02}, r, h)); // 0.29 away: inside the cap
        CHECK(!capsule_free(lv, {4.5, 4, 0.02}, r, h));  // directly under the axis
    }
    SUBCASE("low ceilings catch the head cap") {
        LevelGeometry lv = make_level({{{0, 0, -1}, {8, 8, 0}}, {{0, 0, 1.2}, {8, 8, 2}}});
        CHECK(!capsule_free(lv, {4, 4, 0.02}, r, h));
        LevelGeometry tall = make_level({{{0, 0, -1}, {8, 8, 0}}, {{0, 0, 1.4}, {8, 8, 2}}});
        CHECK(capsule_free(tall, {4, 4, 0.02}, r, h));
    }
    SUBCASE("degenerate capsule is rejected") {
        CHECK_THROWS_AS(capsule_free(floor, {4, 4, 0.02}, r, 0.5), Error);
    }
}

TEST_CASE("capsule_free separation by one axis with margin") {
    // Constructed truth: a box pushed past the capsule radius along a single
    // axis can never touch; pushed back inside the radius at axis height it
    // always does.
    Rng rng(20260802);
    const double r = 0.3, h = 1.37;
    for(int iter = 0; iter < 200; ++iter) {
        Vec3 base{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-1, 1)};
        double axis_z = base.z + rng.uniform(r, h - r); // somewhere on the axis segment
        Vec3 size{rng.uniform(0.2, 2), rng.uniform(0.2, 2), rng.uniform(0.2, 2)};

        // overlapping in y and z, separated in x by r + gap
        double gap = rng.uniform(0.01, 1.0);
        Vec3 lo{base.x + r + gap, base.y - size.y / 2, axis_z - size.z / 2};
        LevelGeometry clear = make_level({{lo, lo + size}});
        CHECK(capsule_free(clear, base, r, h));

        // same box moved to within the radius of the axis
        double pen = rng.uniform(0.01, r - 0.01);
        Vec3 lo2{base.x + r - pen, base.y - size.y / 2, axis_z - size.z / 2};
        LevelGeometry touching = make_level({{lo2, lo2 + size}});
        CHECK(!capsule_free(touching, base, r, h));
    }
}

TEST_CASE("ground_height picks the highest reachable box top") {
    LevelGeometry lv = make_level({
        {{0, 0, -1}, {10, 10, 0}},    // floor
        {{2, 2, 0}, {4, 4, 0.4}},     // table
        {{2, 2, 0.9}, {4, 4, 1.0}},   // shelf above it
    });

    SUBCASE("step allowance sets the ceiling") {
        auto g = ground_height(lv, 3, 3, 0.05);
        REQUIRE(g.has_value());
        CHECK(*g == 0.4); // shelf top 1.0 is out of reach from 0.05
        g = ground_height(lv, 3, 3, 0.7);
        REQUIRE(g.has_value());
        CHECK(*g == 1.0);
        g = ground_height(lv, 3, 3, 0.05, /*step_allowance=*/0.3);
        REQUIRE(g.has_value());
        CHECK(*g == 0.0);
    }
    SUBCASE("plain floor") {
        auto g = ground_height(lv, 1, 1, 0.2);
        REQUIRE(g.has_value());
        CHECK(*g == 0.0);
    }
    SUBCASE("footprints are closed") {
        auto g = ground_height(lv, 4.0, 4.0, 0.2); // exactly the table corner
        REQUIRE(g.has_value());
        CHECK(*g == 0.4);
    }
    SUBCASE("no box below the column") {
        CHECK(!ground_height(lv, 11, 5, 0.2).has_value());
    }
    SUBCASE("drop limit") {
        CHECK(!ground_height(lv, 1, 1, 5.0).has_value()); // 5m above the floor
        auto g = ground_height(lv, 1, 1, 2.9);
        REQUIRE(g.has_value());
        CHECK(*g == 0.0);
    }
}

TEST_CASE("region_contains is closed on every face") {
    Aabb region{{0, 0, 0}, {2, 2, 1}};
    CHECK(region_contains(region, {0, 0, 0}));
    CHECK(region_contains(region, {2, 2, 1}));
    CHECK(region_contains(region, {1, 1, 0.5}));
    CHECK(!region_contains(region, {2.0001, 1, 0.5}));
    CHECK(!region_contains(region, {1, 1, -0.0001}));
    CHECK(!region_contains(region, {1, 1, 1.0001}));
}
