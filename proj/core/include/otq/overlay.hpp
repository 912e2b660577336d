#pragma once

#include <string>
#include <vector>

#include "otq/skeleton.hpp"
#include "otq/surface.hpp"

namespace otq {

// Overlay-based skeleton constructions: a 2-sphere or 2-torus carrying two
// transverse embedded copies of a surface skeleton (a bottom copy and a top
// copy) is thickened into a cylinder over the surface, or closed up into the
// mapping torus (surface x circle).

struct CylinderSkeleton {
    Skeleton sk;
    SurfaceSkeleton bottom;  // boundary surface skeleton at the source end
    SurfaceSkeleton top;     // ... at the target end
    std::vector<int> bottom_wall;  // per bottom edge: its wall face id in sk
    std::vector<int> top_wall;     // per top edge
};

// Known cylinders:
//   "s2_parallel"   circle -> parallel circle on the sphere (no crossings)
//   "s2_cross"      circle -> transverse circle (two crossings)
//   "s2_cross_flip" the same overlay with bottom and top exchanged
//   "t2_theta"      theta graph -> isotoped theta graph on the torus
//   "t2_theta_flip" bottom and top exchanged
CylinderSkeleton make_cylinder(const std::string& kind);

// Closed form of the torus cylinder: T^2 x S^1 with one sheet and wrapped
// walls (the invariant equals the trace of the theta-cylinder map).
Skeleton make_t3_dual();

// Library routing: accepts "cylinder(<kind>)" with a kind listed above.
Skeleton make_cylinder_skeleton(const std::string& name);

}  // namespace otq
