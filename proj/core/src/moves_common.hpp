#pragma once

// Internal helpers shared by the move-engine translation units.

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "otq/moves.hpp"

namespace otq::detail {

// mutable working copy of a skeleton plus orientation bits and deletion marks
struct Builder {
    Skeleton sk;
    std::vector<uint8_t> bits;
    std::vector<char> del_body, del_face, del_edge, del_vertex;

    Builder(const Skeleton& s, const LocalOrder& b) : sk(s), bits(b.begin(), b.end()) {
        del_body.assign(sk.bodies.size(), 0);
        del_face.assign(sk.faces.size(), 0);
        del_edge.assign(sk.edges.size(), 0);
        del_vertex.assign(sk.vertices.size(), 0);
    }

    int add_body() {
        sk.bodies.push_back(Body{});
        del_body.push_back(0);
        return static_cast<int>(sk.bodies.size()) - 1;
    }
    int add_face(int s0, int s1, int chi, uint8_t bit) {
        Face f;
        f.s0 = s0;
        f.s1 = s1;
        f.chi = chi;
        sk.faces.push_back(f);
        bits.push_back(bit);
        del_face.push_back(0);
        return static_cast<int>(sk.faces.size()) - 1;
    }
    int add_edge(const Edge& e) {
        sk.edges.push_back(e);
        del_edge.push_back(0);
        return static_cast<int>(sk.edges.size()) - 1;
    }
    int add_vertex(const Vertex& v) {
        sk.vertices.push_back(v);
        del_vertex.push_back(0);
        return static_cast<int>(sk.vertices.size()) - 1;
    }

    OrientedResult finish(const std::string& what) {
        Skeleton out;
        out.id = sk.id;
        std::vector<int> mb(sk.bodies.size(), -1), mf(sk.faces.size(), -1),
            me(sk.edges.size(), -1), mv(sk.vertices.size(), -1);
        LocalOrder obits;
        for (size_t i = 0; i < sk.bodies.size(); ++i)
            if (!del_body[i]) {
                mb[i] = static_cast<int>(out.bodies.size());
                out.bodies.push_back(sk.bodies[i]);
            }
        for (size_t i = 0; i < sk.faces.size(); ++i)
            if (!del_face[i]) {
                mf[i] = static_cast<int>(out.faces.size());
                out.faces.push_back(sk.faces[i]);
                obits.push_back(bits[i]);
            }
        for (size_t i = 0; i < sk.edges.size(); ++i)
            if (!del_edge[i]) {
                me[i] = static_cast<int>(out.edges.size());
                out.edges.push_back(sk.edges[i]);
            }
        for (size_t i = 0; i < sk.vertices.size(); ++i)
            if (!del_vertex[i]) {
                mv[i] = static_cast<int>(out.vertices.size());
                out.vertices.push_back(sk.vertices[i]);
            }
        auto remap = [&](int& x, const std::vector<int>& m, const char* kind) {
            if (x < 0) return;  // boundary codes
            if (m[x] < 0) throw std::logic_error(what + ": dangling " + kind + " reference");
            x = m[x];
        };
        for (auto& f : out.faces) {
            remap(f.s0, mb, "body");
            remap(f.s1, mb, "body");
        }
        for (auto& e : out.edges) {
            for (int k = 0; k < 3; ++k) {
                remap(e.sector[k], mb, "body");
                remap(e.wall[k].face, mf, "face");
            }
            remap(e.end0, mv, "vertex");
            remap(e.end1, mv, "vertex");
        }
        for (auto& v : out.vertices) {
            for (int i = 0; i < 4; ++i) remap(v.sector[i], mb, "body");
            for (int p = 0; p < 6; ++p) remap(v.wall[p].face, mf, "face");
            for (int g = 0; g < 4; ++g) remap(v.germ[g].edge, me, "edge");
        }
        out.require_valid();
        if (!orientation_admissible(out, obits)) {
            throw validation_error(what + ": rewritten skeleton lost admissibility");
        }
        return OrientedResult{std::move(out), std::move(obits)};
    }
};

// slot of an edge wall holding the face's side-0 germ
inline int wall_s0_slot(const Edge& e, int k) { return e.wall[k].flip ? (k + 1) % 3 : k; }
// position of a vertex wall's side-0 germ
inline int vwall_s0_pos(const Vertex& v, int p) {
    auto [i, j] = kPairs[p];
    return v.wall[p].flip ? j : i;
}

// edge end slot represented by germ g of vertex v (loop occurrences are
// disambiguated by order: the first germ of a loop edge is the end-0 side)
inline int end_slot_of_germ(const Skeleton& sk, int v, int g) {
    const VertexGerm& gm = sk.vertices[v].germ[g];
    const Edge& ed = sk.edges[gm.edge];
    if (ed.end0 == v && ed.end1 == v) {
        int before = 0;
        for (int g2 = 0; g2 < g; ++g2)
            if (sk.vertices[v].germ[g2].edge == gm.edge) before++;
        return before;
    }
    return ed.end0 == v ? 0 : 1;
}

// germ index at vertex v holding the given end slot of edge e
inline int germ_index_for(const Skeleton& sk, int v, int e, int end_slot) {
    for (int g = 0; g < 4; ++g) {
        if (sk.vertices[v].germ[g].edge != e) continue;
        if (end_slot_of_germ(sk, v, g) == end_slot) return g;
    }
    throw std::logic_error("missing germ for edge end");
}

// losses-count ranks of a tournament if it is a total order, else nullopt
template <int N>
std::optional<std::array<int, N>> tournament_ranks(const bool lt[N][N]) {
    std::array<int, N> rank{};
    unsigned seen = 0;
    for (int i = 0; i < N; ++i) {
        int losses = 0;
        for (int j = 0; j < N; ++j)
            if (j != i && lt[j][i]) losses++;
        rank[i] = losses;
        seen |= 1u << losses;
    }
    if (seen != (1u << N) - 1) return std::nullopt;
    return rank;
}

// restore loop-occurrence order: the germ holding end 0 of a loop edge must
// precede the germ holding end 1 (trace convention)
inline void fix_loop_germ_order(Vertex& vx, std::array<int, 4>& slot_of_germ) {
    for (int g1 = 0; g1 < 4; ++g1)
        for (int g2 = g1 + 1; g2 < 4; ++g2)
            if (vx.germ[g1].edge == vx.germ[g2].edge && slot_of_germ[g1] == 1) {
                std::swap(vx.germ[g1], vx.germ[g2]);
                std::swap(slot_of_germ[g1], slot_of_germ[g2]);
            }
}

// pattern symmetry images
std::vector<uint8_t> sigma_B(const std::vector<uint8_t>& v);
std::vector<uint8_t> sigma_L(const std::vector<uint8_t>& v);
int canon_index(MoveKind kind, const std::vector<uint8_t>& raw);

std::vector<MoveSite> find_sites_B(const Skeleton&, const LocalOrder&);
std::vector<MoveSite> find_sites_Binv(const Skeleton&, const LocalOrder&);
std::vector<MoveSite> find_sites_L(const Skeleton&, const LocalOrder&);
std::vector<MoveSite> find_sites_Linv(const Skeleton&, const LocalOrder&);
std::vector<MoveSite> find_sites_T(const Skeleton&, const LocalOrder&);
std::vector<MoveSite> find_sites_Tinv(const Skeleton&, const LocalOrder&);

OrientedResult apply_B(const Skeleton&, const LocalOrder&, const MoveSite&);
OrientedResult apply_Binv(const Skeleton&, const LocalOrder&, const MoveSite&);
OrientedResult apply_L(const Skeleton&, const LocalOrder&, const MoveSite&);
OrientedResult apply_Linv(const Skeleton&, const LocalOrder&, const MoveSite&);
OrientedResult apply_T(const Skeleton&, const LocalOrder&, const MoveSite&);
OrientedResult apply_Tinv(const Skeleton&, const LocalOrder&, const MoveSite&);

}  // namespace otq::detail
