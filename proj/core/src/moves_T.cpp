#include "moves_common.hpp"

// The 2-3 recombination move (T) and its inverse. Forward direction: take a
// 1-stratum E joining two distinct 4-valent 0-strata u, v. The five 3-stratum
// germs of the pattern get roles 0..4: roles 1..3 are E's three sectors
// (slot r-1), role 0 is the sector of u away from E, role 4 the sector of v
// away from E. The move deletes E, inserts the 2-stratum h between roles 0
// and 4, and rebuilds the pattern with three 0-strata w_a, w_b, w_c joined
// pairwise by three new 1-strata. Variants are rank vectors of the five roles
// under the local order; the order must be total on the pattern.

namespace otq::detail {

namespace {

const std::array<std::array<int, 4>, 3> kRefTuple{{{0, 1, 2, 4}, {0, 2, 3, 4}, {0, 1, 4, 3}}};
const std::array<std::array<int, 4>, 3> kMirTuple{{{0, 1, 4, 2}, {0, 2, 4, 3}, {0, 1, 3, 4}}};

int perm_parity(const std::array<int, 4>& p) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) inv++;
    return inv & 1;
}

int index_in(const std::array<int, 4>& tup, int role) {
    for (int m = 0; m < 4; ++m)
        if (tup[m] == role) return m;
    throw std::logic_error("role not in tuple");
}

using FacePairMap = std::map<std::pair<int, int>, std::pair<int, int>>;  // roles -> {face, s0role}

bool insert_pair(FacePairMap& fp, int ri, int rj, int face, int s0role) {
    auto key = std::minmax(ri, rj);
    auto [it, fresh] = fp.emplace(key, std::pair{face, s0role});
    return fresh || it->second == std::pair{face, s0role};
}

// one end of the host edge of a forward recombination site
struct TEnd {
    int vertex = -1, germ = -1, leftover_pos = -1;
    std::array<int, 4> role_of_pos{};
    std::array<int, 5> pos_of_role{};
    int par = 0;  // parity of the edge-frame arrangement at this end
};

std::optional<TEnd> analyze_t_end(const Skeleton& sk, int E, int vertex, int end_slot,
                                  int leftover_role) {
    TEnd te;
    te.vertex = vertex;
    te.germ = germ_index_for(sk, vertex, E, end_slot);
    const VertexGerm& gm = sk.vertices[vertex].germ[te.germ];
    std::array<int, 4> seq{3, 3, 3, 3};
    te.role_of_pos.fill(-1);
    te.pos_of_role.fill(-1);
    for (int t = 0; t < 3; ++t) {
        seq[gm.slot_pos[t]] = t;
        te.role_of_pos[gm.slot_pos[t]] = t + 1;
    }
    for (int pos = 0; pos < 4; ++pos)
        if (te.role_of_pos[pos] < 0) {
            te.leftover_pos = pos;
            te.role_of_pos[pos] = leftover_role;
        }
    for (int pos = 0; pos < 4; ++pos) te.pos_of_role[te.role_of_pos[pos]] = pos;
    te.par = perm_parity(seq);
    return te;
}

struct TBase {
    int E = -1;
    TEnd u, v;
    FacePairMap fp;  // all role pairs except (0,4)
    std::array<int, 5> body{};
    bool mirrored = false;
};

std::optional<TBase> analyze_T_base(const Skeleton& sk, int E) {
    const Edge& ed = sk.edges[E];
    if (ed.chi != 1 || ed.end0 < 0 || ed.end1 < 0 || ed.end0 == ed.end1) return std::nullopt;
    TBase b;
    b.E = E;
    if (auto te = analyze_t_end(sk, E, ed.end0, 0, 0)) b.u = *te;
    else return std::nullopt;
    if (auto te = analyze_t_end(sk, E, ed.end1, 1, 4)) b.v = *te;
    else return std::nullopt;
    if (b.u.par == b.v.par) return std::nullopt;
    b.mirrored = b.u.par == 0;
    b.body[0] = sk.vertices[ed.end0].sector[b.u.leftover_pos];
    for (int r = 1; r <= 3; ++r) b.body[r] = ed.sector[r - 1];
    b.body[4] = sk.vertices[ed.end1].sector[b.v.leftover_pos];
    for (const TEnd* te : {&b.u, &b.v}) {
        const Vertex& vx = sk.vertices[te->vertex];
        for (int p = 0; p < 6; ++p) {
            auto [i, j] = kPairs[p];
            if (!insert_pair(b.fp, te->role_of_pos[i], te->role_of_pos[j], vx.wall[p].face,
                             te->role_of_pos[vwall_s0_pos(vx, p)]))
                return std::nullopt;
        }
    }
    return b;
}

// variant of a site given the order bit of the new sheet (0/4); nullopt if
// the local order fails to be total on the five roles
std::optional<int> t_variant(const Skeleton&, const LocalOrder& bits, const TBase& b, int bf) {
    bool lt[5][5] = {};
    for (const auto& [key, val] : b.fp) {
        auto [i, j] = key;
        int bit = bits[val.first] ^ (val.second == j ? 1 : 0);
        (bit == 0 ? lt[i][j] : lt[j][i]) = true;
    }
    (bf == 0 ? lt[0][4] : lt[4][0]) = true;
    auto rank = tournament_ranks<5>(lt);
    if (!rank) return std::nullopt;
    std::vector<uint8_t> raw(rank->begin(), rank->end());
    return canon_index(MoveKind::T, raw);
}

int leg_target(int missing_role) {
    switch (missing_role) {
        case 3: return 0;  // w_a
        case 1: return 1;  // w_b
        case 2: return 2;  // w_c
        default: return -1;
    }
}

}  // namespace

std::vector<MoveSite> find_sites_T(const Skeleton& sk, const LocalOrder& bits) {
    std::vector<MoveSite> out;
    for (int E = 0; E < static_cast<int>(sk.edges.size()); ++E) {
        auto base = analyze_T_base(sk, E);
        if (!base) continue;
        for (int bf = 0; bf < 2; ++bf) {
            if (auto var = t_variant(sk, bits, *base, bf))
                out.push_back({MoveKind::T, *var, {E, bf}});
        }
    }
    return out;
}

OrientedResult apply_T(const Skeleton& sk, const LocalOrder& bits, const MoveSite& site) {
    if (site.anchors.size() != 2) throw validation_error("recombination move needs 2 anchors");
    int E = site.anchors[0], bf = site.anchors[1];
    std::optional<TBase> base;
    if (E >= 0 && E < static_cast<int>(sk.edges.size()) && (bf == 0 || bf == 1))
        base = analyze_T_base(sk, E);
    std::optional<int> var;
    if (base) var = t_variant(sk, bits, *base, bf);
    if (!var || *var != site.variant) throw validation_error("stale recombination site");
    const TBase& b = *base;
    const auto& tup = b.mirrored ? kMirTuple : kRefTuple;

    Builder bld(sk, bits);
    Skeleton& out = bld.sk;
    int h = bld.add_face(b.body[0], b.body[4], 1, static_cast<uint8_t>(bf));
    FacePairMap fp = b.fp;
    fp[{0, 4}] = {h, 0};
    auto wall_for = [&](int ri, int rj) {
        auto [face, s0role] = fp.at(std::minmax(ri, rj));
        return Wall{face, s0role == rj};
    };

    // new 1-strata between the w's; edge x joins the two w's missing role x's
    // complement: eab = roles (0,2,4), eac = (0,1,4), ebc = (0,3,4)
    const std::array<std::array<int, 3>, 3> eroles{{{0, 2, 4}, {0, 1, 4}, {0, 3, 4}}};
    std::array<int, 3> eid{};
    for (int x = 0; x < 3; ++x) {
        Edge ne;
        for (int t = 0; t < 3; ++t) {
            ne.sector[t] = b.body[eroles[x][t]];
            ne.wall[t] = wall_for(eroles[x][t], eroles[x][(t + 1) % 3]);
        }
        eid[x] = bld.add_edge(ne);
    }

    // classify the legs of u and v by the role they miss
    struct Leg {
        int edge = -1, germ = -1, end_slot = -1;
        std::array<int, 3> new_pos{};  // slot -> position in the target tuple
    };
    std::array<Leg, 3> ulegs, vlegs;  // indexed by target w
    for (const TEnd* te : {&b.u, &b.v}) {
        const Vertex& vx = sk.vertices[te->vertex];
        for (int g = 0; g < 4; ++g) {
            if (g == te->germ) continue;
            int present = 0;
            for (int t = 0; t < 3; ++t) present |= 1 << te->role_of_pos[vx.germ[g].slot_pos[t]];
            int missing = -1;
            for (int r = 0; r < 5; ++r)
                if (te->pos_of_role[r] >= 0 && !(present & (1 << r))) missing = r;
            int x = leg_target(missing);
            if (x < 0) throw std::logic_error("recombination leg misses the apex role");
            Leg& leg = te == &b.u ? ulegs[x] : vlegs[x];
            leg.edge = vx.germ[g].edge;
            leg.germ = g;
            leg.end_slot = end_slot_of_germ(sk, te->vertex, g);
            for (int t = 0; t < 3; ++t)
                leg.new_pos[t] = index_in(tup[x], te->role_of_pos[vx.germ[g].slot_pos[t]]);
        }
    }

    // junction edge germs per w: w_a carries eab,eac; w_b eab,ebc; w_c eac,ebc
    const std::array<std::array<int, 2>, 3> wedges{{{0, 1}, {0, 2}, {1, 2}}};
    const std::array<std::array<int, 2>, 3> wslots{{{0, 0}, {1, 0}, {1, 1}}};  // end slots there
    std::array<int, 3> wid{};
    std::array<std::array<int, 4>, 3> slot_of_germ{};
    for (int x = 0; x < 3; ++x) {
        Vertex w;
        for (int m = 0; m < 4; ++m) w.sector[m] = b.body[tup[x][m]];
        for (int p = 0; p < 6; ++p) {
            auto [i, j] = kPairs[p];
            w.wall[p] = wall_for(tup[x][i], tup[x][j]);
        }
        w.germ[0] = VertexGerm{ulegs[x].edge, ulegs[x].new_pos};
        w.germ[1] = VertexGerm{vlegs[x].edge, vlegs[x].new_pos};
        for (int q = 0; q < 2; ++q) {
            VertexGerm ng;
            ng.edge = eid[wedges[x][q]];
            for (int t = 0; t < 3; ++t) ng.slot_pos[t] = index_in(tup[x], eroles[wedges[x][q]][t]);
            w.germ[2 + q] = ng;
        }
        slot_of_germ[x] = {ulegs[x].end_slot, vlegs[x].end_slot, wslots[x][0], wslots[x][1]};
        wid[x] = bld.add_vertex(w);
    }
    out.edges[eid[0]].end0 = wid[0];
    out.edges[eid[0]].end1 = wid[1];
    out.edges[eid[1]].end0 = wid[0];
    out.edges[eid[1]].end1 = wid[2];
    out.edges[eid[2]].end0 = wid[1];
    out.edges[eid[2]].end1 = wid[2];
    for (int x = 0; x < 3; ++x) {
        auto set_end = [&](const Leg& leg) {
            (leg.end_slot == 0 ? out.edges[leg.edge].end0 : out.edges[leg.edge].end1) = wid[x];
        };
        set_end(ulegs[x]);
        set_end(vlegs[x]);
    }
    for (int x = 0; x < 3; ++x) fix_loop_germ_order(out.vertices[wid[x]], slot_of_germ[x]);

    bld.del_edge[E] = 1;
    bld.del_vertex[b.u.vertex] = bld.del_vertex[b.v.vertex] = 1;
    return bld.finish("recombination move");
}

// --- inverse -------------------------------------------------------------------

namespace {

bool tri_disc(const Skeleton& sk, int f) {
    const Face& fc = sk.faces[f];
    return fc.chi == 1 && fc.bdry == Boundary::none && fc.boundary_chi == 0;
}

struct TinvCorner {
    int w = -1, pair = -1;
    std::array<int, 4> role_of_pos{};
    std::array<int, 5> pos_of_role{};
    int legU_germ = -1, legV_germ = -1;
};

struct TinvSite {
    int h = -1;
    std::array<int, 3> runEdge{}, runSlot{}, runExit{};
    std::array<TinvCorner, 3> corner{};  // C1 (between R1,R2), C2, C3
    std::array<int, 5> body{};
    FacePairMap fp;
    bool odd = false;  // orientation class of the reconstruction
    int variant = -1;
};

// outer role carried by run i: R1 -> 2, R2 -> 3, R3 -> 1
constexpr std::array<int, 3> kRunOuterRole{2, 3, 1};
// reference sector tuple of the corner between runs i and i+1: w_b, w_c, w_a
constexpr std::array<int, 3> kCornerPattern{1, 2, 0};

std::optional<TinvSite> analyze_Tinv(const Skeleton& sk, const LocalOrder& bits, int h) {
    if (!tri_disc(sk, h)) return std::nullopt;
    std::vector<std::vector<BoundaryItem>> cycles;
    try {
        cycles = trace_face_boundary(sk, h);
    } catch (const validation_error&) {
        return std::nullopt;
    }
    if (cycles.size() != 1 || cycles[0].size() != 6) return std::nullopt;
    const auto& cyc = cycles[0];
    TinvSite site;
    site.h = h;
    for (int i = 0; i < 3; ++i) {
        const BoundaryItem &run = cyc[2 * i], &cor = cyc[2 * i + 1];
        if (run.kind != BoundaryItem::EdgeRun || cor.kind != BoundaryItem::VertexCorner)
            return std::nullopt;
        if (run.exit_end < 0) return std::nullopt;
        site.runEdge[i] = run.id;
        site.runSlot[i] = run.slot;
        site.runExit[i] = run.exit_end;
        site.corner[i].w = cor.id;
        site.corner[i].pair = cor.slot;
    }
    if (site.runEdge[0] == site.runEdge[1] || site.runEdge[0] == site.runEdge[2] ||
        site.runEdge[1] == site.runEdge[2])
        return std::nullopt;
    if (site.corner[0].w == site.corner[1].w || site.corner[0].w == site.corner[2].w ||
        site.corner[1].w == site.corner[2].w)
        return std::nullopt;

    site.body[0] = sk.faces[h].s0;
    site.body[4] = sk.faces[h].s1;
    std::array<int, 3> role0slot{}, role4slot{}, outerSlot{};
    for (int i = 0; i < 3; ++i) {
        const Edge& ed = sk.edges[site.runEdge[i]];
        int k = site.runSlot[i];
        role0slot[i] = wall_s0_slot(ed, k);
        role4slot[i] = k + (k + 1) % 3 - role0slot[i];
        outerSlot[i] = (k + 2) % 3;
        site.body[kRunOuterRole[i]] = ed.sector[outerSlot[i]];
    }

    int parity = -1;
    for (int i = 0; i < 3; ++i) {
        TinvCorner& c = site.corner[i];
        const Vertex& vx = sk.vertices[c.w];
        auto [pi, pj] = kPairs[c.pair];
        int pos0 = vwall_s0_pos(vx, c.pair);
        int pos4 = pi + pj - pos0;
        int prev = i, next = (i + 1) % 3;
        int g_prev, g_next;
        try {
            g_prev = germ_index_for(sk, c.w, site.runEdge[prev], site.runExit[prev]);
            g_next = germ_index_for(sk, c.w, site.runEdge[next], 1 - site.runExit[next]);
        } catch (const std::logic_error&) {
            return std::nullopt;
        }
        const VertexGerm &gp = vx.germ[g_prev], &gn = vx.germ[g_next];
        if (gp.slot_pos[role0slot[prev]] != pos0 || gp.slot_pos[role4slot[prev]] != pos4)
            return std::nullopt;
        if (gn.slot_pos[role0slot[next]] != pos0 || gn.slot_pos[role4slot[next]] != pos4)
            return std::nullopt;
        int po_prev = gp.slot_pos[outerSlot[prev]], po_next = gn.slot_pos[outerSlot[next]];
        if (po_prev == po_next) return std::nullopt;
        c.role_of_pos.fill(-1);
        c.role_of_pos[pos0] = 0;
        c.role_of_pos[pos4] = 4;
        c.role_of_pos[po_prev] = kRunOuterRole[prev];
        c.role_of_pos[po_next] = kRunOuterRole[next];
        c.pos_of_role.fill(-1);
        for (int pos = 0; pos < 4; ++pos) c.pos_of_role[c.role_of_pos[pos]] = pos;
        // the two remaining germs are the legs toward the rebuilt junctions
        for (int g = 0; g < 4; ++g) {
            if (g == g_prev || g == g_next) continue;
            int present = 0;
            for (int t = 0; t < 3; ++t) present |= 1 << c.role_of_pos[vx.germ[g].slot_pos[t]];
            int want_u = (1 << 0) | (1 << kRunOuterRole[prev]) | (1 << kRunOuterRole[next]);
            int want_v = (1 << 4) | (1 << kRunOuterRole[prev]) | (1 << kRunOuterRole[next]);
            if (present == want_u) c.legU_germ = g;
            else if (present == want_v) c.legV_germ = g;
            else return std::nullopt;
        }
        if (c.legU_germ < 0 || c.legV_germ < 0) return std::nullopt;
        std::array<int, 4> perm{};
        for (int m = 0; m < 4; ++m) perm[m] = c.pos_of_role[kRefTuple[kCornerPattern[i]][m]];
        int par = perm_parity(perm);
        if (parity < 0) parity = par;
        else if (parity != par) return std::nullopt;
        for (int p = 0; p < 6; ++p) {
            auto [wi, wj] = kPairs[p];
            if (!insert_pair(site.fp, c.role_of_pos[wi], c.role_of_pos[wj], vx.wall[p].face,
                             c.role_of_pos[vwall_s0_pos(vx, p)]))
                return std::nullopt;
        }
    }
    site.odd = parity == 1;
    if (site.fp.at({0, 4}) != std::pair{h, 0}) return std::nullopt;

    bool lt[5][5] = {};
    for (const auto& [key, val] : site.fp) {
        auto [i, j] = key;
        int bit = bits[val.first] ^ (val.second == j ? 1 : 0);
        (bit == 0 ? lt[i][j] : lt[j][i]) = true;
    }
    auto rank = tournament_ranks<5>(lt);
    if (!rank) return std::nullopt;
    std::vector<uint8_t> raw(rank->begin(), rank->end());
    site.variant = canon_index(MoveKind::Tinv, raw);
    return site;
}

}  // namespace

std::vector<MoveSite> find_sites_Tinv(const Skeleton& sk, const LocalOrder& bits) {
    std::vector<MoveSite> out;
    for (int h = 0; h < static_cast<int>(sk.faces.size()); ++h) {
        if (auto s = analyze_Tinv(sk, bits, h))
            out.push_back({MoveKind::Tinv, s->variant, {h}});
    }
    return out;
}

OrientedResult apply_Tinv(const Skeleton& sk, const LocalOrder& bits, const MoveSite& site) {
    if (site.anchors.size() != 1)
        throw validation_error("recombination-inverse move needs 1 anchor");
    int h = site.anchors[0];
    std::optional<TinvSite> found;
    if (h >= 0 && h < static_cast<int>(sk.faces.size())) found = analyze_Tinv(sk, bits, h);
    if (!found || found->variant != site.variant)
        throw validation_error("stale recombination-inverse site");
    const TinvSite& T = *found;
    const std::array<int, 4> Tu = T.odd ? std::array{0, 1, 3, 2} : std::array{0, 1, 2, 3};
    const std::array<int, 4> Tv = T.odd ? std::array{1, 2, 4, 3} : std::array{1, 2, 3, 4};

    Builder bld(sk, bits);
    Skeleton& out = bld.sk;
    auto wall_for = [&](int ri, int rj) {
        auto [face, s0role] = T.fp.at(std::minmax(ri, rj));
        return Wall{face, s0role == rj};
    };

    Edge Ee;
    for (int t = 0; t < 3; ++t) {
        Ee.sector[t] = T.body[t + 1];
        Ee.wall[t] = wall_for(t + 1, (t + 1) % 3 + 1);
    }
    int E = bld.add_edge(Ee);

    auto build_junction = [&](const std::array<int, 4>& tup, bool is_u) {
        Vertex jx;
        for (int m = 0; m < 4; ++m) jx.sector[m] = T.body[tup[m]];
        for (int p = 0; p < 6; ++p) {
            auto [i, j] = kPairs[p];
            jx.wall[p] = wall_for(tup[i], tup[j]);
        }
        VertexGerm eg;
        eg.edge = E;
        for (int t = 0; t < 3; ++t) eg.slot_pos[t] = index_in(tup, t + 1);
        jx.germ[0] = eg;
        std::array<int, 4> slot{is_u ? 0 : 1, -1, -1, -1};
        std::array<std::pair<int, int>, 3> moved{};  // {edge, old end slot} per leg
        for (int i = 0; i < 3; ++i) {
            const TinvCorner& c = T.corner[i];
            int g = is_u ? c.legU_germ : c.legV_germ;
            const VertexGerm& old = sk.vertices[c.w].germ[g];
            VertexGerm ng;
            ng.edge = old.edge;
            for (int t = 0; t < 3; ++t)
                ng.slot_pos[t] = index_in(tup, c.role_of_pos[old.slot_pos[t]]);
            jx.germ[1 + i] = ng;
            int s = end_slot_of_germ(sk, c.w, g);
            slot[1 + i] = s;
            moved[i] = {old.edge, s};
        }
        int id = bld.add_vertex(jx);
        for (auto [edge, s] : moved) (s == 0 ? out.edges[edge].end0 : out.edges[edge].end1) = id;
        fix_loop_germ_order(out.vertices[id], slot);
        return id;
    };
    int u = build_junction(Tu, true);
    int v = build_junction(Tv, false);
    out.edges[E].end0 = u;
    out.edges[E].end1 = v;

    bld.del_face[h] = 1;
    for (int i = 0; i < 3; ++i) {
        bld.del_edge[T.runEdge[i]] = 1;
        bld.del_vertex[T.corner[i].w] = 1;
    }
    return bld.finish("recombination-inverse move");
}

}  // namespace otq::detail
