#pragma once

#include <array>
#include <string>
#include <vector>

#include "otq/skeleton.hpp"

namespace otq {

// Stratified-skeleton model of a closed oriented surface, one dimension down
// from Skeleton: 2-strata (faces) carry chi, 1-strata (edges) have an ordered
// pair of face germs, 0-strata (vertices) have three edge germs in
// counterclockwise order with a face germ between consecutive edge germs.

struct SFace {
    int chi = 1;
};

struct SEdgeGerm {
    int edge = -1;
    int end = 0;  // 0: the vertex is the edge's v0 end, 1: its v1 end
    bool operator==(const SEdgeGerm&) const = default;
};

struct SEdge {
    int f0 = -1, f1 = -1;  // f0 = face on the left of the v0 -> v1 direction
    int v0 = kCircle, v1 = kCircle;
    int chi = 1;  // 0 for circles
};

struct SVertex {
    std::array<SEdgeGerm, 3> germ{};  // counterclockwise
    std::array<int, 3> face{};        // face[k] sits between germ k and germ k+1
};

struct SurfaceSkeleton {
    std::string id;
    std::vector<SFace> faces;
    std::vector<SEdge> edges;
    std::vector<SVertex> vertices;

    std::vector<std::string> validate() const;
    void require_valid() const;
    int euler_alternating() const;  // equals chi of the surface

    nlohmann::json to_json() const;
    static SurfaceSkeleton from_json(const nlohmann::json& doc);
};

// One bit per 1-stratum; bit = 0 means f0 precedes f1 in local orders.
using SurfaceOrder = std::vector<uint8_t>;

std::vector<SurfaceOrder> solve_surface_order(const SurfaceSkeleton& ss,
                                              const SolveOptions& opts = {});
bool surface_order_admissible(const SurfaceSkeleton& ss, const SurfaceOrder& bits);

// Brute-force isomorphism of small surface skeleta (stratum-permutation search).
bool surface_isomorphic(const SurfaceSkeleton& a, const SurfaceSkeleton& b);

// The skeleton that a 3-bordism skeleton induces on one of its boundaries.
// Faces come from boundary-marked 3-strata, edges from boundary-marked
// 2-strata, vertices from boundary endpoints of 1-strata.
SurfaceSkeleton boundary_skeleton(const Skeleton& sk, Boundary which);

// Restriction of a 3-skeleton local order to the induced boundary skeleton.
SurfaceOrder restrict_order(const Skeleton& sk, const LocalOrder& bits, Boundary which);

// Library surface skeleta: the theta graph on the sphere ("s2_theta"), the
// circle-with-caps sphere skeleton ("s2_circle") and the standard theta-curve
// torus skeleton ("t2_theta").
SurfaceSkeleton library_surface(const std::string& name);

}  // namespace otq
