#pragma once

namespace decoy {

// Physical movement profile used both when carving the waypoint lattice and
// when ticking agents. Dimensions are meters, mirroring the classic player
// hull (32x32x72 units) at the 0.01905 m/unit scale.
struct AgentSpec {
    double radius = 0.30;
    double height = 1.37;
    double eye_height = 1.22;  // LOS rays originate here
    double clearance = 0.02;   // capsule lift off the floor for contact tests
    double speed = 4.76;       // 250 u/s running speed
    int tick_rate = 60;        // physics frames per second
};

} // namespace decoy
