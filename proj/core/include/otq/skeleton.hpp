#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "otq/common.hpp"

#include <json.hpp>

namespace otq {

// Stratified-skeleton model of a compact oriented 3-manifold (possibly with
// in/out boundary). Strata are stored per dimension:
//   bodies   = 3-strata, faces = 2-strata, edges = 1-strata, vertices = 0-strata.
// Incidence carries germ-level data: a face has an ordered pair of 3-stratum
// germs (its co-orientation reference); an edge has a cyclic triple of
// 3-stratum germs (sectors) with the 2-stratum germ (wall) between consecutive
// sectors; a vertex has a tetrahedral arrangement of four 3-stratum germs,
// six walls indexed by position pairs, and four 1-stratum germs.

enum class Boundary : uint8_t { none = 0, in = 1, out = 2 };

// Negative codes used in edge end slots.
constexpr int kCircle = -1;       // closed 1-stratum, no endpoint
constexpr int kBoundaryIn = -2;   // endpoint on the in-boundary
constexpr int kBoundaryOut = -3;  // endpoint on the out-boundary

struct Wall {
    int face = -1;
    bool flip = false;  // false: face side-0 germ attaches to the lower slot of the pair
    bool operator==(const Wall&) const = default;
};

struct Body {
    int chi = 1;
    int boundary_chi = 0;
    bool is_ball_certified = true;
    Boundary bdry = Boundary::none;  // which boundary (if any) this 3-stratum meets
};

struct Face {
    int s0 = -1, s1 = -1;  // ordered 3-stratum germs (co-orientation reference)
    int chi = 1;
    int boundary_chi = 0;
    Boundary bdry = Boundary::none;
};

struct Edge {
    std::array<int, 3> sector{-1, -1, -1};  // cyclic 3-stratum germs
    std::array<Wall, 3> wall{};             // wall[k] sits between sector k and k+1 (mod 3)
    int end0 = kCircle, end1 = kCircle;     // vertex id or negative code
    int chi = 1;
    int boundary_chi = 0;
    Boundary bdry = Boundary::none;
    int monodromy = 0;  // germ-cycling monodromy of a circle 1-stratum; must be 0 for local orders
};

struct VertexGerm {
    int edge = -1;
    std::array<int, 3> slot_pos{-1, -1, -1};  // edge sector slot t -> vertex position
};

struct Vertex {
    std::array<int, 4> sector{-1, -1, -1, -1};  // positively-oriented tetrahedral arrangement
    std::array<Wall, 6> wall{};                 // indexed by kPairs
    std::array<VertexGerm, 4> germ{};
};

constexpr std::array<std::pair<int, int>, 6> kPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline int pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    for (int p = 0; p < 6; ++p)
        if (kPairs[p].first == i && kPairs[p].second == j) return p;
    throw std::logic_error("bad pair");
}

inline int chi_sym(int chi, int boundary_chi) { return 2 * chi - boundary_chi; }

struct Skeleton {
    std::string id;
    std::vector<Body> bodies;
    std::vector<Face> faces;
    std::vector<Edge> edges;
    std::vector<Vertex> vertices;

    std::vector<std::string> validate() const;  // report of violations; empty = valid
    void require_valid() const;

    // Sum over strata of (-1)^dim * chi; equals chi(M) (0 for closed M).
    int euler_alternating() const;

    nlohmann::json to_json() const;
    static Skeleton from_json(const nlohmann::json& doc);
    static Skeleton load_file(const std::string& path);
    void save_file(const std::string& path) const;
};

// One admissible orientation: a co-orientation bit per 2-stratum.
// bit = 0 means the side-0 germ precedes the side-1 germ in every local order.
using LocalOrder = std::vector<uint8_t>;

struct SolveOptions {
    int cap = 10000;
    bool first_only = false;
};

// All local orders of sk (as orientation-bit vectors), lexicographic, capped.
std::vector<LocalOrder> solve_local_order(const Skeleton& sk, const SolveOptions& opts = {});

// Checks the acyclicity/transitivity constraints of an orientation assignment.
bool orientation_admissible(const Skeleton& sk, const LocalOrder& bits);

struct OrientedSkeleton {
    Skeleton sk;
    LocalOrder bits;
};

// Pairs a skeleton with a verified order (round-trip of the bit encoding).
OrientedSkeleton orient_from_order(const Skeleton& sk, const LocalOrder& order);

// Rank (0..2) of each sector slot of edge e under the local order.
std::array<int, 3> edge_ranks(const Skeleton& sk, const LocalOrder& bits, int e);
// Rank (0..3) of each position of vertex v under the local order.
std::array<int, 4> vertex_ranks(const Skeleton& sk, const LocalOrder& bits, int v);
// +1 if the rank arrangement of v is an even permutation of the stored
// (positively-oriented) arrangement, else -1.
int vertex_sign(const Skeleton& sk, const LocalOrder& bits, int v);

// --- face boundary tracing -------------------------------------------------
// A corner is a traversal step of the face boundary: either along an edge
// occurrence (at wall slot `slot` of edge `edge`) or through a vertex at
// pair `pair` (where the face is the wall between the two positions).
struct BoundaryItem {
    enum Kind { EdgeRun, VertexCorner } kind;
    int id = -1;        // edge id or vertex id
    int slot = -1;      // wall slot (edges) or pair index (vertices)
    int exit_end = -1;  // EdgeRun only: edge end the traversal leaves through (-1 circle)
    bool operator==(const BoundaryItem&) const = default;
};
// Boundary cycles of face f, each a cyclic alternation of edge runs and
// vertex corners (pure-circle boundaries are a single EdgeRun item).
std::vector<std::vector<BoundaryItem>> trace_face_boundary(const Skeleton& sk, int f);

// --- triangulations ----------------------------------------------------------
// Triangulation document: {"tetrahedra": [[v0,v1,v2,v3],...], "vertex_order": [...]}
// Tetrahedron tuples must be positively oriented; gluings are implicit via
// shared global vertex triples.
Skeleton dual_of_triangulation(const nlohmann::json& doc);

// --- library -----------------------------------------------------------------
// name in {s3_two_balls, s3_torus_halves, s2xs1_product, lens(k), t3_dual,
//          cylinder(s2|t2, ...)}.
Skeleton library_skeleton(const std::string& name);

Skeleton make_s3_two_balls();
Skeleton make_s2xs1_product();
Skeleton make_lens(int p);        // L(p,1) via two solid tori, p transverse crossings
Skeleton make_s3_torus_halves();  // the p = 1 torus decomposition of S^3

}  // namespace otq
