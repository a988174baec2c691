#!/usr/bin/env python3
"""Regenerates maps/de_mini.json and the test fixture maps.

The geometry is hand-designed around the movement constants (capsule radius
0.30, clearance 0.02, node spacing 0.7, march step 4.76/60): ramps rise
0.015 per 0.15 run so the capsule clears each riser, and drop lips pair a
shifted waypoint lattice with the floor lattice so lip-to-floor gaps stay
strictly inside the (0.3, 0.7) window instead of landing on its endpoints.
Committed JSON is the source of truth; rerun this only to rebuild it.
"""

import json
import os

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def rnd(v):
    # Trim float noise so the JSON stays tidy; 4 decimals is exact for every
    # coordinate used here.
    out = round(v, 4)
    return int(out) if out == int(out) else out


def box(x1, y1, z1, x2, y2, z2):
    return [rnd(x1), rnd(y1), rnd(z1), rnd(x2), rnd(y2), rnd(z2)]


def ramp_x_west(x_top, y1, y2, top, slabs, run=0.15, rise=0.015):
    """Slabs ascending toward x_top from the east, topping out at `top`.

    The highest slab starts at x_top, so a deck whose east face sits at
    x_top meets the ramp flush and the BFS walk crosses the joint."""
    out = []
    for k in range(1, slabs + 1):
        out.append(box(x_top + run * (slabs - k), y1, 0,
                       x_top + run * (slabs - k + 1), y2, top - rise * (slabs - k)))
    return out


def ramp_y(y_high, x1, x2, top, slabs, run=0.15, rise=0.015):
    """Slabs ascending toward y_high (stacked in +y)."""
    out = []
    for k in range(1, slabs + 1):
        out.append(box(x1, y_high - run * (slabs - k + 1), 0,
                       x2, y_high - run * (slabs - k), top - rise * (slabs - k)))
    return out


def write_map(relpath, data):
    path = os.path.join(ROOT, relpath)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    lines = ["{"]
    lines.append('  "name": %s,' % json.dumps(data["name"]))
    lines.append('  "unit_scale": %s,' % json.dumps(data["unit_scale"]))
    lines.append('  "boxes": [')
    rows = [json.dumps(b, separators=(", ", ": ")) for b in data["boxes"]]
    lines.extend("    %s%s" % (r, "," if i + 1 < len(rows) else "")
                 for i, r in enumerate(rows))
    lines.append("  ],")
    lines.append('  "spawns": {')
    for ti, team in enumerate(("T", "CT")):
        rows = [json.dumps(b, separators=(", ", ": ")) for b in data["spawns"][team]]
        lines.append('    "%s": [%s]%s' % (team, ", ".join(rows),
                                           "," if ti == 0 else ""))
    lines.append("  },")
    lines.append('  "bombsites": {')
    sites = list(data["bombsites"].items())
    for i, (name, b) in enumerate(sites):
        lines.append('    %s: %s%s' % (json.dumps(name),
                                       json.dumps(b, separators=(", ", ": ")),
                                       "," if i + 1 < len(sites) else ""))
    lines.append("  },")
    lines.append('  "waypoint_seeds": [%s],' %
                 ", ".join(json.dumps(s, separators=(", ", ": "))
                           for s in data["waypoint_seeds"]))
    lines.append('  "manual_waypoints": [%s]' %
                 ", ".join(json.dumps(s, separators=(", ", ": "))
                           for s in data.get("manual_waypoints", [])))
    lines.append("}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote %s (%d boxes)" % (relpath, len(data["boxes"])))


# ---------------------------------------------------------------- de_mini
# Shipped map. Units are 1/40 m (unit_scale 0.025), so 40 units = 1 m.
# Two-lane layout: mid wall with north/south chokes, site B on the floor
# south-east, site A on a 0.6 m platform north-east reached by a ramp, with
# drop lips off the platform's west face back to the floor.
de_mini = {
    "name": "de_mini",
    "unit_scale": 0.025,
    "boxes": [
        box(0, 0, -20, 1440, 1120, 0),        # floor
        box(0, 0, 0, 20, 1120, 120),          # west wall
        box(1420, 0, 0, 1440, 1120, 120),     # east wall
        box(0, 0, 0, 1440, 20, 120),          # south wall
        box(0, 1100, 0, 1440, 1120, 120),     # north wall
        box(700, 20, 0, 720, 160, 120),       # mid wall, south stub
        box(700, 280, 0, 720, 840, 120),      # mid wall, center slab
        box(700, 960, 0, 720, 1100, 120),     # mid wall, north stub
        box(900, 300, 0, 1080, 320, 120),     # B split wall, west part
        box(1200, 300, 0, 1420, 320, 120),    # B split wall, east part
        box(820, 560, 0, 880, 620, 44),       # low crate: sight over, no walk
        box(480, 760, 0, 560, 840, 64),       # tall crate: blocks sight
        box(300, 909.2, 18, 640, 910.8, 26),  # handrail: rays pass, capsule cannot
        box(1110, 820, 0, 1420, 1100, 24),    # site A platform (0.6 m)
    ]
    # Ramp onto the platform: 40 slabs over 6 m, y 580 -> 820.
    + [box(1160, 574 + 6 * k, 0, 1260, 580 + 6 * k, 0.6 * k)
       for k in range(1, 41)],
    "spawns": {
        "T": [box(80, 400, -10, 360, 720, 40)],
        "CT": [box(1280, 340, -10, 1400, 680, 40)],
    },
    "bombsites": {
        "A": box(1140, 840, 14, 1400, 1080, 50),
        "B": box(1000, 60, -10, 1320, 300, 40),
    },
    # Second seed sits on the platform with its lattice shifted 0.1 m in x so
    # lip nodes pair with floor nodes 0.63 m away, inside the drop window.
    "waypoint_seeds": [[220, 560, 20], [1224, 960, 32]],
    "manual_waypoints": [],
}
write_map("maps/de_mini.json", de_mini)

FIX = "tests/fixtures/maps/"

# ------------------------------------------------------------- flat_room
write_map(FIX + "flat_room.json", {
    "name": "flat_room",
    "unit_scale": 1.0,
    "boxes": [box(0, 0, -1, 8, 8, 0)],
    "spawns": {
        "T": [box(0.4, 0.4, -0.5, 3, 7.6, 0)],
        "CT": [box(5, 0.4, -0.5, 7.6, 7.6, 0)],
    },
    "bombsites": {"A": box(3.2, 3.2, -0.5, 4.8, 4.8, 0)},
    "waypoint_seeds": [[4, 4, 0.2]],
})

# ----------------------------------------------------------------- arena
# Open 20x20 field, spawns in opposite corners. Every pair of standing
# positions has line of sight, which the combat tests rely on.
write_map(FIX + "arena.json", {
    "name": "arena",
    "unit_scale": 1.0,
    "boxes": [box(0, 0, -1, 20, 20, 0)],
    "spawns": {
        "T": [box(0.5, 14, -0.5, 6, 19.5, 0)],
        "CT": [box(14, 0.5, -0.5, 19.5, 6, 0)],
    },
    "bombsites": {"A": box(0.5, 0.5, -0.5, 5, 5, 0)},
    "waypoint_seeds": [[10, 10, 0.3]],
})

# ------------------------------------------------------------- two_rooms
# Wall with a 1.6 m doorway; sight and movement between the rooms only pass
# through the door.
write_map(FIX + "two_rooms.json", {
    "name": "two_rooms",
    "unit_scale": 1.0,
    "boxes": [
        box(0, 0, -1, 20, 10, 0),
        box(9.6, 0, 0, 10, 4.2, 2.2),
        box(9.6, 5.8, 0, 10, 10, 2.2),
    ],
    "spawns": {
        "T": [box(1, 1, -0.5, 4, 9, 0)],
        "CT": [box(16, 1, -0.5, 19, 9, 0)],
    },
    "bombsites": {"A": box(17, 7, -0.5, 19.5, 9.5, 0)},
    "waypoint_seeds": [[5, 5, 0.2]],
})

# -------------------------------------------------------------- rail_bar
# Thin bar at torso height spanning most of the room. Sight rays clear it,
# so first-pass edges cross it; the capsule walk then rejects them and
# movement detours around the bar's open north end.
write_map(FIX + "rail_bar.json", {
    "name": "rail_bar",
    "unit_scale": 1.0,
    "boxes": [
        box(0, 0, -1, 12, 6, 0),
        box(6.11, 0, 0.45, 6.19, 4.5, 0.65),
    ],
    "spawns": {
        "T": [box(0.5, 0.5, -0.5, 2.5, 5.5, 0)],
        "CT": [box(9.5, 0.5, -0.5, 11.5, 5.5, 0)],
    },
    "bombsites": {"A": box(10, 4, -0.5, 11.5, 5.5, 0)},
    "waypoint_seeds": [[3, 3, 0.2]],
})

# ----------------------------------------------------------------- ledge
# 0.6 m deck with a ramp climbing to its east face across y < 3.55 and a
# bare lip over the rest, so the graph gets both a walkable climb and
# one-way drop edges off the lip. The deck seed shifts the deck lattice so
# lip nodes sit 0.6 in front of live floor columns.
write_map(FIX + "ledge.json", {
    "name": "ledge",
    "unit_scale": 1.0,
    "boxes": [
        box(0, 0, -1, 14, 8, 0),
        box(0, 0, 0, 3, 8, 0.6),
    ] + ramp_x_west(3, 0, 3.55, 0.6, 40),
    "spawns": {
        "T": [box(0.2, 4.5, 0.35, 2.95, 7.8, 0.6)],
        "CT": [box(10.5, 0.5, -0.5, 13.5, 7.5, 0)],
    },
    "bombsites": {"A": box(11.5, 5, -0.5, 13.7, 7.7, 0)},
    "waypoint_seeds": [[7, 6, 0.2], [1.5, 6, 0.8]],
})

# ---------------------------------------------------------- ledge_oneway
# 1.2 m deck with no ramp: the only way off is the drop, so after pruning
# the deck vanishes and its one-way edges with it.
write_map(FIX + "ledge_oneway.json", {
    "name": "ledge_oneway",
    "unit_scale": 1.0,
    "boxes": [
        box(0, 0, -1, 12, 8, 0),
        box(0, 0, 0, 2.5, 8, 1.2),
    ],
    "spawns": {
        "T": [box(4, 0.5, -0.5, 6.5, 7.5, 0)],
        "CT": [box(9, 0.5, -0.5, 11.5, 7.5, 0)],
    },
    "bombsites": {"A": box(10, 5.5, -0.5, 11.7, 7.7, 0)},
    "waypoint_seeds": [[8, 4, 0.2], [1.1, 4, 1.4]],
})

# ------------------------------------------------------------ ledge_high
# 3.2 m deck: too high even for a drop, so the deck component simply gets
# pruned and no drop edges appear at all.
write_map(FIX + "ledge_high.json", {
    "name": "ledge_high",
    "unit_scale": 1.0,
    "boxes": [
        box(0, 0, -1, 12, 8, 0),
        box(0, 0, 0, 2.5, 8, 3.2),
    ],
    "spawns": {
        "T": [box(4, 0.5, -0.5, 6.5, 7.5, 0)],
        "CT": [box(9, 0.5, -0.5, 11.5, 7.5, 0)],
    },
    "bombsites": {"A": box(10, 5.5, -0.5, 11.7, 7.7, 0)},
    "waypoint_seeds": [[8, 4, 0.2], [1.1, 4, 3.4]],
})

# --------------------------------------------------------- tiny_u1 / u2
# Same room expressed in two unit systems; u2 stores doubled coordinates
# with half the unit scale, and must load to a bit-identical level.
tiny_boxes = [
    (0, 0, -1, 6, 6, 0),
    (2.5, 2.5, 0, 3.5, 3.5, 1.4),
]
tiny = {
    "name": "tiny",
    "unit_scale": 1.0,
    "boxes": [box(*b) for b in tiny_boxes],
    "spawns": {
        "T": [box(0.4, 0.4, -0.5, 2, 5.6, 0)],
        "CT": [box(4, 0.4, -0.5, 5.6, 5.6, 0)],
    },
    "bombsites": {"A": box(4.2, 4.2, -0.5, 5.7, 5.7, 0)},
    "waypoint_seeds": [[1, 1, 0.2]],
}
write_map(FIX + "tiny_u1.json", tiny)


def scale2(b):
    return [rnd(v * 2) for v in b]


write_map(FIX + "tiny_u2.json", {
    "name": "tiny",
    "unit_scale": 0.5,
    "boxes": [scale2(b) for b in tiny["boxes"]],
    "spawns": {
        "T": [scale2(b) for b in tiny["spawns"]["T"]],
        "CT": [scale2(b) for b in tiny["spawns"]["CT"]],
    },
    "bombsites": {"A": scale2(tiny["bombsites"]["A"])},
    "waypoint_seeds": [[2, 2, 0.4]],
})

# ------------------------------------------------------------ manual_room
# One waypoint placed off-lattice by hand (survives, stitched in) and one
# within merge distance of an auto node (dropped as a duplicate).
write_map(FIX + "manual_room.json", {
    "name": "manual_room",
    "unit_scale": 1.0,
    "boxes": [
        box(0, 0, -1, 10, 10, 0),
        box(6, 2, 0, 7, 3, 2),
    ],
    "spawns": {
        "T": [box(0.4, 0.4, -0.5, 3, 9.6, 0)],
        "CT": [box(7.5, 0.4, -0.5, 9.6, 9.6, 0)],
    },
    "bombsites": {"A": box(8, 8, -0.5, 9.6, 9.6, 0)},
    "waypoint_seeds": [[5, 5, 0.2]],
    "manual_waypoints": [[7.45, 5.45, 0.3], [5.05, 5, 0.4]],
})

# -------------------------------------------------------- invalid inputs
write_map(FIX + "bad_box.json", {
    "name": "bad_box",
    "unit_scale": 1.0,
    "boxes": [box(0, 0, -1, 8, 8, 0), [0, 0, 0, 5, 5, 0]],
    "spawns": {
        "T": [box(0.4, 0.4, -0.5, 3, 7.6, 0)],
        "CT": [box(5, 0.4, -0.5, 7.6, 7.6, 0)],
    },
    "bombsites": {"A": box(3.2, 3.2, -0.5, 4.8, 4.8, 0)},
    "waypoint_seeds": [[4, 4, 0.2]],
})

write_map(FIX + "bad_spawn.json", {
    "name": "bad_spawn",
    "unit_scale": 1.0,
    "boxes": [box(0, 0, -1, 8, 8, 0)],
    "spawns": {
        "T": [box(7, 7, -0.5, 9, 8.5, 0)],
        "CT": [box(5, 0.4, -0.5, 7.6, 7.6, 0)],
    },
    "bombsites": {"A": box(3.2, 3.2, -0.5, 4.8, 4.8, 0)},
    "waypoint_seeds": [[4, 4, 0.2]],
})

with open(os.path.join(ROOT, FIX, "bad_syntax.json"), "w") as f:
    f.write('{"name": "broken", "unit_scale": 1, "boxes": [[0, 0\n')
print("wrote %sbad_syntax.json" % FIX)
