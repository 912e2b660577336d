#include "moves_common.hpp"

// Orientation-preserving combinatorial isomorphism of stratified skeleta.
// Degrees of freedom per stratum: bodies map 1-1; faces may swap their two
// sides (co-orientation flip); edges admit the 6 dihedral slot bijections
// (rotations keep the direction, reflections reverse it and negate the
// monodromy); vertices admit the 12 even position permutations (odd ones
// would reverse the ambient orientation). Backtracking with an undo trail;
// germ-level constraints propagate edge maps from vertex maps.

namespace otq {

namespace {

using detail::end_slot_of_germ;
using detail::vwall_s0_pos;
using detail::wall_s0_slot;

struct Matcher {
    const Skeleton& A;
    const Skeleton& B;
    std::vector<int> body_map, body_used;
    std::vector<int> face_map, face_swap, face_used;
    std::vector<int> edge_map, edge_sig, edge_used;
    std::vector<int> vert_map, vert_used;
    std::vector<std::array<int, 4>> vert_perm;
    struct TrailItem {
        int kind;  // 0 body, 1 face, 2 edge, 3 vertex
        int a;
    };
    std::vector<TrailItem> trail;

    Matcher(const Skeleton& a, const Skeleton& b) : A(a), B(b) {
        body_map.assign(a.bodies.size(), -1);
        body_used.assign(b.bodies.size(), 0);
        face_map.assign(a.faces.size(), -1);
        face_swap.assign(a.faces.size(), 0);
        face_used.assign(b.faces.size(), 0);
        edge_map.assign(a.edges.size(), -1);
        edge_sig.assign(a.edges.size(), 0);
        edge_used.assign(b.edges.size(), 0);
        vert_map.assign(a.vertices.size(), -1);
        vert_used.assign(b.vertices.size(), 0);
        vert_perm.assign(a.vertices.size(), {});
    }

    size_t mark() const { return trail.size(); }
    void undo(size_t m) {
        while (trail.size() > m) {
            auto [kind, a] = trail.back();
            trail.pop_back();
            switch (kind) {
                case 0: body_used[body_map[a]] = 0; body_map[a] = -1; break;
                case 1: face_used[face_map[a]] = 0; face_map[a] = -1; break;
                case 2: edge_used[edge_map[a]] = 0; edge_map[a] = -1; break;
                case 3: vert_used[vert_map[a]] = 0; vert_map[a] = -1; break;
            }
        }
    }

    bool assign_body(int a, int b) {
        if (body_map[a] >= 0) return body_map[a] == b;
        if (body_used[b]) return false;
        const Body &ba = A.bodies[a], &bb = B.bodies[b];
        if (ba.chi != bb.chi || ba.boundary_chi != bb.boundary_chi || ba.bdry != bb.bdry ||
            ba.is_ball_certified != bb.is_ball_certified)
            return false;
        body_map[a] = b;
        body_used[b] = 1;
        trail.push_back({0, a});
        return true;
    }

    bool assign_face(int a, int b, int swap) {
        if (face_map[a] >= 0) return face_map[a] == b && face_swap[a] == swap;
        if (face_used[b]) return false;
        const Face &fa = A.faces[a], &fb = B.faces[b];
        if (fa.chi != fb.chi || fa.boundary_chi != fb.boundary_chi || fa.bdry != fb.bdry)
            return false;
        face_map[a] = b;
        face_swap[a] = swap;
        face_used[b] = 1;
        trail.push_back({1, a});
        if (!assign_body(fa.s0, swap ? fb.s1 : fb.s0)) return false;
        if (!assign_body(fa.s1, swap ? fb.s0 : fb.s1)) return false;
        return true;
    }

    // slot bijections: sig 0..2 rotations t -> (t+sig)%3; sig 3..5 reflections
    // t -> (sig-t)%3 (direction-reversing)
    static int sig_apply(int sig, int t) {
        return sig < 3 ? (t + sig) % 3 : ((sig - t) % 3 + 3) % 3;
    }
    static bool sig_reflects(int sig) { return sig >= 3; }

    bool assign_edge(int a, int b, int sig) {
        if (edge_map[a] >= 0) return edge_map[a] == b && edge_sig[a] == sig;
        if (edge_used[b]) return false;
        const Edge &ea = A.edges[a], &eb = B.edges[b];
        if (ea.chi != eb.chi || ea.boundary_chi != eb.boundary_chi || ea.bdry != eb.bdry)
            return false;
        bool refl = sig_reflects(sig);
        int ia0 = ea.end0, ia1 = ea.end1;
        int ib0 = refl ? eb.end1 : eb.end0, ib1 = refl ? eb.end0 : eb.end1;
        if ((ia0 < 0) != (ib0 < 0) || (ia1 < 0) != (ib1 < 0)) return false;
        if (ia0 < 0 && ia0 != ib0) return false;
        if (ia1 < 0 && ia1 != ib1) return false;
        if (eb.monodromy != (refl ? -ea.monodromy : ea.monodromy)) return false;
        edge_map[a] = b;
        edge_sig[a] = sig;
        edge_used[b] = 1;
        trail.push_back({2, a});
        for (int t = 0; t < 3; ++t)
            if (!assign_body(ea.sector[t], eb.sector[sig_apply(sig, t)])) return false;
        for (int k = 0; k < 3; ++k) {
            // the wall between slots (k, k+1) lands between their images
            int k2 = refl ? sig_apply(sig, k + 1 == 3 ? 0 : k + 1) : sig_apply(sig, k);
            int swap = sig_apply(sig, wall_s0_slot(ea, k)) != wall_s0_slot(eb, k2);
            if (!assign_face(ea.wall[k].face, eb.wall[k2].face, swap)) return false;
        }
        return true;
    }

    bool assign_vertex(int a, int b, const std::array<int, 4>& pi) {
        if (vert_map[a] >= 0) return vert_map[a] == b && vert_perm[a] == pi;
        if (vert_used[b]) return false;
        const Vertex &va = A.vertices[a], &vb = B.vertices[b];
        vert_map[a] = b;
        vert_perm[a] = pi;
        vert_used[b] = 1;
        trail.push_back({3, a});
        for (int m = 0; m < 4; ++m)
            if (!assign_body(va.sector[m], vb.sector[pi[m]])) return false;
        for (int p = 0; p < 6; ++p) {
            auto [i, j] = kPairs[p];
            int p2 = pair_index(pi[i], pi[j]);
            int swap = pi[vwall_s0_pos(va, p)] != vwall_s0_pos(vb, p2);
            if (!assign_face(va.wall[p].face, vb.wall[p2].face, swap)) return false;
        }
        for (int g = 0; g < 4; ++g) {
            const VertexGerm& ga = va.germ[g];
            std::array<int, 3> want{pi[ga.slot_pos[0]], pi[ga.slot_pos[1]], pi[ga.slot_pos[2]]};
            std::array<int, 3> wsort = want;
            std::sort(wsort.begin(), wsort.end());
            int g2 = -1;
            for (int h = 0; h < 4; ++h) {
                std::array<int, 3> have = vb.germ[h].slot_pos;
                std::sort(have.begin(), have.end());
                if (have == wsort) g2 = h;
            }
            if (g2 < 0) return false;
            const VertexGerm& gb = vb.germ[g2];
            int sig = -1;
            std::array<int, 3> sl{};
            for (int t = 0; t < 3; ++t) {
                int t2 = -1;
                for (int s = 0; s < 3; ++s)
                    if (gb.slot_pos[s] == want[t]) t2 = s;
                if (t2 < 0) return false;
                sl[t] = t2;
            }
            if (sl[1] == (sl[0] + 1) % 3) {
                sig = sl[0];  // rotation
            } else {
                for (int s = 3; s < 6; ++s)
                    if (sig_apply(s, 0) == sl[0] && sig_apply(s, 1) == sl[1]) sig = s;
                if (sig < 0) return false;
            }
            int sa = end_slot_of_germ(A, a, g);
            int sb = end_slot_of_germ(B, b, g2);
            if (sig_reflects(sig) ? sb != 1 - sa : sb != sa) return false;
            if (!assign_edge(ga.edge, gb.edge, sig)) return false;
        }
        return true;
    }

    bool solve_vertices(size_t next, const std::vector<std::array<int, 4>>& even_perms) {
        while (next < A.vertices.size() && vert_map[next] >= 0) next++;
        if (next >= A.vertices.size()) return solve_edges(0);
        for (int b = 0; b < static_cast<int>(B.vertices.size()); ++b) {
            if (vert_used[b]) continue;
            for (const auto& pi : even_perms) {
                size_t m = mark();
                if (assign_vertex(static_cast<int>(next), b, pi) &&
                    solve_vertices(next + 1, even_perms))
                    return true;
                undo(m);
            }
        }
        return false;
    }

    bool solve_edges(size_t next) {
        while (next < A.edges.size() && edge_map[next] >= 0) next++;
        if (next >= A.edges.size()) return solve_faces(0);
        for (int b = 0; b < static_cast<int>(B.edges.size()); ++b) {
            if (edge_used[b]) continue;
            for (int sig = 0; sig < 6; ++sig) {
                size_t m = mark();
                if (assign_edge(static_cast<int>(next), b, sig) && solve_edges(next + 1))
                    return true;
                undo(m);
            }
        }
        return false;
    }

    bool solve_faces(size_t next) {
        while (next < A.faces.size() && face_map[next] >= 0) next++;
        if (next >= A.faces.size()) return solve_bodies(0);
        for (int b = 0; b < static_cast<int>(B.faces.size()); ++b) {
            if (face_used[b]) continue;
            for (int swap = 0; swap < 2; ++swap) {
                size_t m = mark();
                if (assign_face(static_cast<int>(next), b, swap) && solve_faces(next + 1))
                    return true;
                undo(m);
            }
        }
        return false;
    }

    bool solve_bodies(size_t next) {
        while (next < A.bodies.size() && body_map[next] >= 0) next++;
        if (next >= A.bodies.size()) return true;
        for (int b = 0; b < static_cast<int>(B.bodies.size()); ++b) {
            if (body_used[b]) continue;
            size_t m = mark();
            if (assign_body(static_cast<int>(next), b) && solve_bodies(next + 1)) return true;
            undo(m);
        }
        return false;
    }
};

std::vector<std::array<int, 4>> even_perms4() {
    std::array<int, 4> p{0, 1, 2, 3};
    std::vector<std::array<int, 4>> out;
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) inv++;
        if (inv % 2 == 0) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

bool skeleton_isomorphic(const Skeleton& a, const Skeleton& b) {
    if (a.bodies.size() != b.bodies.size() || a.faces.size() != b.faces.size() ||
        a.edges.size() != b.edges.size() || a.vertices.size() != b.vertices.size())
        return false;
    static const std::vector<std::array<int, 4>> perms = even_perms4();
    Matcher m(a, b);
    return m.solve_vertices(0, perms);
}

}  // namespace otq
