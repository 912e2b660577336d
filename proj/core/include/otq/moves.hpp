#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otq/skeleton.hpp"
#include "otq/surface.hpp"

namespace otq {

// Local rewrite moves on oriented 3-skeleta: the pocket move (B), the strand
// collision move (L), and the 2-3 recombination move (T), each with forward
// and inverse direction. Oriented variants are generated by solving the
// orientation constraints on the move patterns and quotienting by the
// pattern's orientation-preserving symmetries; the counts 3 / 9 / 20 are
// asserted by tests.

enum class MoveKind { B, Binv, L, Linv, T, Tinv };

std::string to_string(MoveKind kind);
MoveKind move_kind_from_string(const std::string& s);

// Canonical variant table for a kind (shared between forward and inverse):
//   B: bit vectors over the sheets (F, U, W) of the pocket pattern
//   L: bit vectors over the sheets (a, b, c, d, e) of the collision pattern
//   T: rank vectors of the five sectors of the recombination pattern
const std::vector<std::vector<uint8_t>>& variant_table(MoveKind kind);
int variant_count(MoveKind kind);

struct MoveSite {
    MoveKind kind;
    int variant = -1;
    // anchors: B {face}; Binv {edge, middle-sector-slot}; L {face, edge1,
    // wall-slot1, edge2, wall-slot2}; Linv {face}; T {edge, order-bit of the
    // new sheet}; Tinv {face}
    std::vector<int> anchors;
    bool operator==(const MoveSite&) const = default;
};

struct OrientedResult {
    Skeleton sk;
    LocalOrder bits;
};

std::vector<MoveSite> find_sites(const Skeleton& sk, const LocalOrder& bits, MoveKind kind);
OrientedResult apply_move(const Skeleton& sk, const LocalOrder& bits, const MoveSite& site);

struct WalkResult {
    Skeleton sk;
    LocalOrder bits;
    nlohmann::json log;  // array of {kind, variant, site-anchor-ids}
};

// n uniformly random applicable moves (over all sites of all kinds); the log
// replays deterministically.
WalkResult random_walk(const Skeleton& sk, const LocalOrder& bits, int n, uint64_t seed);
OrientedResult replay(const Skeleton& sk, const LocalOrder& bits, const nlohmann::json& log);
std::string move_log_hash(const nlohmann::json& log);

// Orientation-preserving combinatorial isomorphism of stratifications.
bool skeleton_isomorphic(const Skeleton& a, const Skeleton& b);

// --- moves on surface skeleta ------------------------------------------------
// b inserts a bigon pocket along a 1-stratum; l is the edge flip between two
// trivalent 0-strata.

enum class SurfaceMoveKind { b, binv, l, linv };

std::string to_string(SurfaceMoveKind kind);

struct SurfaceMoveSite {
    SurfaceMoveKind kind;
    // anchors: b {edge, side}; binv {face}; l {edge}; linv {edge}
    std::vector<int> anchors;
    bool operator==(const SurfaceMoveSite&) const = default;
};

std::vector<SurfaceMoveSite> find_surface_sites(const SurfaceSkeleton& ss, SurfaceMoveKind kind);
SurfaceSkeleton apply_surface_move(const SurfaceSkeleton& ss, const SurfaceMoveSite& site);

}  // namespace otq
