#include "moves_common.hpp"

// Strand collision move (L) and its inverse. The forward move takes a disc
// 2-stratum `e` whose boundary runs along two distinct 1-strata and pushes the
// strands through each other across the disc: the disc splits into a front and
// a back piece, a new lune 2-stratum `f` appears between the strands' outer
// sectors, each strand splits in two, and two 4-valent 0-strata appear joined
// by two new 1-strata. Roles of the four 3-stratum germs in the pattern:
//   Lam = outer sector of strand 1, P = outer sector of strand 2,
//   T = side-1 germ of the disc, B = side-0 germ of the disc.
// Pattern sheets and their germ pairs: a=(Lam,T), b=(B,Lam), c=(P,T),
// d=(B,P), e=(B,T), f=(Lam,P).

namespace otq::detail {

namespace {

struct StrandInfo {
    int edge = -1, k = -1;   // wall slot carrying the disc
    int exit_end = -1;       // trace direction
    int outer_slot = -1;     // sector slot away from the disc (role Lam or P)
    int t_slot = -1, b_slot = -1;
    int w1_face = -1, w2_face = -1;  // wall (outer,T) and wall (B,outer)
    bool w1_s0_is_t = false;         // side-0 germ of w1 sits in the T slot
    bool w2_s0_is_b = false;         // side-0 germ of w2 sits in the B slot
};

StrandInfo analyze_strand(const Skeleton& sk, const BoundaryItem& run) {
    StrandInfo s;
    s.edge = run.id;
    s.k = run.slot;
    s.exit_end = run.exit_end;
    const Edge& ed = sk.edges[s.edge];
    s.outer_slot = (s.k + 2) % 3;
    s.b_slot = wall_s0_slot(ed, s.k);
    s.t_slot = s.b_slot == s.k ? (s.k + 1) % 3 : s.k;
    int w1_slot = s.t_slot == (s.k + 1) % 3 ? (s.k + 1) % 3 : (s.k + 2) % 3;
    int w2_slot = (s.k + 1) % 3 + (s.k + 2) % 3 - w1_slot;
    s.w1_face = ed.wall[w1_slot].face;
    s.w2_face = ed.wall[w2_slot].face;
    s.w1_s0_is_t = wall_s0_slot(ed, w1_slot) == s.t_slot;
    s.w2_s0_is_b = wall_s0_slot(ed, w2_slot) == s.b_slot;
    return s;
}

struct LSite {
    int e;  // disc face
    StrandInfo s1, s2;
    std::vector<BoundaryItem> cycle;
    int i1 = -1, i2 = -1;  // run positions in the cycle
    std::vector<uint8_t> raw;
    int variant = -1;
};

bool disc_qualifies(const Skeleton& sk, int f) {
    const Face& fc = sk.faces[f];
    return fc.chi == 1 && fc.bdry == Boundary::none && fc.boundary_chi == 0;
}

std::optional<LSite> analyze_L(const Skeleton& sk, const LocalOrder& bits, int e,
                               std::vector<BoundaryItem> cycle, int i1, int i2) {
    LSite site;
    site.e = e;
    site.cycle = std::move(cycle);
    site.i1 = i1;
    site.i2 = i2;
    const BoundaryItem &r1 = site.cycle[i1], &r2 = site.cycle[i2];
    if (r1.id == r2.id) return std::nullopt;
    for (const BoundaryItem* r : {&r1, &r2}) {
        int cnt = 0;
        for (int k = 0; k < 3; ++k)
            if (sk.edges[r->id].wall[k].face == e) cnt++;
        if (cnt != 1) return std::nullopt;
    }
    site.s1 = analyze_strand(sk, r1);
    site.s2 = analyze_strand(sk, r2);
    const StrandInfo &s1 = site.s1, &s2 = site.s2;
    uint8_t ba = bits[s1.w1_face] ^ (s1.w1_s0_is_t ? 1 : 0);
    uint8_t bb = bits[s1.w2_face] ^ (s1.w2_s0_is_b ? 0 : 1);
    uint8_t bc = bits[s2.w1_face] ^ (s2.w1_s0_is_t ? 1 : 0);
    uint8_t bd = bits[s2.w2_face] ^ (s2.w2_s0_is_b ? 0 : 1);
    uint8_t be = bits[e];
    site.raw = {ba, bb, bc, bd, be};
    site.variant = canon_index(MoveKind::L, site.raw);
    return site;
}

// collect every collision site of the disc face e
void collect_L(const Skeleton& sk, const LocalOrder& bits, int e, std::vector<LSite>& out) {
    if (!disc_qualifies(sk, e)) return;
    std::vector<std::vector<BoundaryItem>> cycles;
    try {
        cycles = trace_face_boundary(sk, e);
    } catch (const validation_error&) {
        return;
    }
    if (cycles.size() != 1) return;
    const auto& cyc = cycles[0];
    std::vector<int> runs;
    for (int i = 0; i < static_cast<int>(cyc.size()); ++i)
        if (cyc[i].kind == BoundaryItem::EdgeRun && cyc[i].exit_end >= 0) runs.push_back(i);
    for (size_t a = 0; a < runs.size(); ++a) {
        for (size_t b = a + 1; b < runs.size(); ++b) {
            int i1 = runs[a], i2 = runs[b];
            // canonical strand order: lexicographically smaller (edge, slot) first
            auto key = [&](int i) {
                return std::pair(cyc[i].id, cyc[i].slot);
            };
            if (key(i2) < key(i1)) std::swap(i1, i2);
            if (auto s = analyze_L(sk, bits, e, cyc, i1, i2)) out.push_back(std::move(*s));
        }
    }
}

// first order-bit for the lune sheet f=(Lam,P) making the four-role tournament
// transitive; role indices Lam=0, P=1, T=2, B=3
int lune_bit(const std::vector<uint8_t>& raw) {
    for (int bf = 0; bf < 2; ++bf) {
        bool lt[4][4] = {};
        auto rel = [&](int i, int j, uint8_t bit) {
            if (bit == 0) lt[i][j] = true;
            else lt[j][i] = true;
        };
        rel(0, 2, raw[0]);
        rel(3, 0, raw[1]);
        rel(1, 2, raw[2]);
        rel(3, 1, raw[3]);
        rel(3, 2, raw[4]);
        rel(0, 1, static_cast<uint8_t>(bf));
        if (tournament_ranks<4>(lt)) return bf;
    }
    throw std::logic_error("no transitive extension of a collision pattern");
}

}  // namespace

std::vector<MoveSite> find_sites_L(const Skeleton& sk, const LocalOrder& bits) {
    std::vector<MoveSite> out;
    std::vector<LSite> sites;
    for (int e = 0; e < static_cast<int>(sk.faces.size()); ++e) collect_L(sk, bits, e, sites);
    for (const auto& s : sites) {
        out.push_back({MoveKind::L, s.variant,
                       {s.e, s.s1.edge, s.s1.k, s.s2.edge, s.s2.k}});
    }
    return out;
}

OrientedResult apply_L(const Skeleton& sk, const LocalOrder& bits, const MoveSite& site) {
    if (site.anchors.size() != 5) throw validation_error("collision move needs 5 anchors");
    std::vector<LSite> sites;
    if (site.anchors[0] >= 0 && site.anchors[0] < static_cast<int>(sk.faces.size()))
        collect_L(sk, bits, site.anchors[0], sites);
    const LSite* found = nullptr;
    for (const auto& s : sites) {
        if (s.s1.edge == site.anchors[1] && s.s1.k == site.anchors[2] &&
            s.s2.edge == site.anchors[3] && s.s2.k == site.anchors[4] &&
            s.variant == site.variant) {
            found = &s;
        }
    }
    if (!found) throw validation_error("stale collision site");
    const LSite& L = *found;
    const StrandInfo &s1 = L.s1, &s2 = L.s2;

    Builder bld(sk, bits);
    Skeleton& out = bld.sk;
    const Face disc = sk.faces[L.e];
    int body_b = disc.s0, body_t = disc.s1;
    int body_l = sk.edges[s1.edge].sector[s1.outer_slot];
    int body_p = sk.edges[s2.edge].sector[s2.outer_slot];
    uint8_t be = bits[L.e];
    int e_front = bld.add_face(body_b, body_t, 1, be);
    int e_back = bld.add_face(body_b, body_t, 1, be);
    int bf = lune_bit(L.raw);
    int f_new = bld.add_face(body_l, body_p, 1, static_cast<uint8_t>(bf));

    // strand halves. Front halves (reusing the strand ids) meet at u; back
    // halves (copies) meet at v. Strand 1 keeps its exit end in front, strand 2
    // keeps its entry end in front, so the front piece's boundary closes up.
    int exit1 = s1.exit_end, entry1 = 1 - exit1;
    int exit2 = s2.exit_end, entry2 = 1 - exit2;
    auto end_of = [](const Edge& ed, int slot) { return slot == 0 ? ed.end0 : ed.end1; };
    auto set_end = [](Edge& ed, int slot, int v) { (slot == 0 ? ed.end0 : ed.end1) = v; };

    Edge l1b_copy = sk.edges[s1.edge];
    Edge l2b_copy = sk.edges[s2.edge];
    int old_entry1 = end_of(l1b_copy, entry1);
    int old_exit2 = end_of(l2b_copy, exit2);
    l1b_copy.wall[s1.k].face = e_back;
    l2b_copy.wall[s2.k].face = e_back;
    int l1b = bld.add_edge(l1b_copy);
    int l2b = bld.add_edge(l2b_copy);

    // re-point the far-end germs of the back halves before touching the fronts
    if (old_entry1 >= 0) {
        int g = germ_index_for(sk, old_entry1, s1.edge, entry1);
        out.vertices[old_entry1].germ[g].edge = l1b;
    }
    if (old_exit2 >= 0) {
        int g = germ_index_for(sk, old_exit2, s2.edge, exit2);
        out.vertices[old_exit2].germ[g].edge = l2b;
    }

    out.edges[s1.edge].wall[s1.k].face = e_front;
    out.edges[s2.edge].wall[s2.k].face = e_front;

    // new lune edges m1 = (Lam,T,P) and m2 = (Lam,B,P)
    Edge m1e;
    m1e.sector = {body_l, body_t, body_p};
    m1e.wall = {Wall{s1.w1_face, s1.w1_s0_is_t}, Wall{s2.w1_face, !s2.w1_s0_is_t},
                Wall{f_new, true}};
    Edge m2e;
    m2e.sector = {body_l, body_b, body_p};
    m2e.wall = {Wall{s1.w2_face, s1.w2_s0_is_b}, Wall{s2.w2_face, !s2.w2_s0_is_b},
                Wall{f_new, true}};
    int m1 = bld.add_edge(m1e);
    int m2 = bld.add_edge(m2e);

    // junction of the front halves
    Vertex u;
    u.sector = {body_l, body_p, body_t, body_b};
    u.wall = {Wall{f_new, false},        Wall{s1.w1_face, s1.w1_s0_is_t},
              Wall{s1.w2_face, s1.w2_s0_is_b}, Wall{s2.w1_face, s2.w1_s0_is_t},
              Wall{s2.w2_face, s2.w2_s0_is_b}, Wall{e_front, true}};
    u.germ[0].edge = s1.edge;
    u.germ[0].slot_pos[s1.outer_slot] = 0;
    u.germ[0].slot_pos[s1.t_slot] = 2;
    u.germ[0].slot_pos[s1.b_slot] = 3;
    u.germ[1].edge = s2.edge;
    u.germ[1].slot_pos[s2.outer_slot] = 1;
    u.germ[1].slot_pos[s2.t_slot] = 2;
    u.germ[1].slot_pos[s2.b_slot] = 3;
    u.germ[2] = VertexGerm{m1, {0, 2, 1}};
    u.germ[3] = VertexGerm{m2, {0, 3, 1}};
    int uv = bld.add_vertex(u);

    // junction of the back halves
    Vertex v;
    v.sector = {body_l, body_p, body_b, body_t};
    v.wall = {Wall{f_new, false},        Wall{s1.w2_face, s1.w2_s0_is_b},
              Wall{s1.w1_face, s1.w1_s0_is_t}, Wall{s2.w2_face, s2.w2_s0_is_b},
              Wall{s2.w1_face, s2.w1_s0_is_t}, Wall{e_back, false}};
    v.germ[0].edge = l1b;
    v.germ[0].slot_pos[s1.outer_slot] = 0;
    v.germ[0].slot_pos[s1.t_slot] = 3;
    v.germ[0].slot_pos[s1.b_slot] = 2;
    v.germ[1].edge = l2b;
    v.germ[1].slot_pos[s2.outer_slot] = 1;
    v.germ[1].slot_pos[s2.t_slot] = 3;
    v.germ[1].slot_pos[s2.b_slot] = 2;
    v.germ[2] = VertexGerm{m1, {0, 3, 1}};
    v.germ[3] = VertexGerm{m2, {0, 2, 1}};
    int vv = bld.add_vertex(v);

    set_end(out.edges[s1.edge], entry1, uv);
    set_end(out.edges[s2.edge], exit2, uv);
    set_end(out.edges[l1b], exit1, vv);
    set_end(out.edges[l2b], entry2, vv);
    out.edges[m1].end0 = out.edges[m2].end0 = uv;
    out.edges[m1].end1 = out.edges[m2].end1 = vv;

    // split the rest of the disc boundary between the two pieces
    int n = static_cast<int>(L.cycle.size());
    auto repoint = [&](const BoundaryItem& it, int face) {
        if (it.kind == BoundaryItem::EdgeRun) out.edges[it.id].wall[it.slot].face = face;
        else out.vertices[it.id].wall[it.slot].face = face;
    };
    for (int i = (L.i1 + 1) % n; i != L.i2; i = (i + 1) % n) repoint(L.cycle[i], e_front);
    for (int i = (L.i2 + 1) % n; i != L.i1; i = (i + 1) % n) repoint(L.cycle[i], e_back);

    bld.del_face[L.e] = 1;
    return bld.finish("collision move");
}

// --- inverse -------------------------------------------------------------------

namespace {

struct RoleGerm {
    int germ = -1, edge = -1;
    std::array<int, 3> role_of_slot{-1, -1, -1};
};

struct LuneEnd {
    int vertex = -1;
    std::array<int, 4> role_of_pos{-1, -1, -1, -1};  // Lam=0, P=1, T=2, B=3
    std::array<int, 4> pos_of_role{-1, -1, -1, -1};
    int disc = -1;  // front/back piece at this end
    // germs classified by missing role
    RoleGerm strand1, strand2, m_t, m_b;
};

struct StrandWalls {
    int k = -1;  // disc wall slot
    int w1_face = -1, w2_face = -1;
    bool w1_s0_is_t = false, w2_s0_is_b = false;
    int far_end_slot = -1;  // end slot away from the junction
};

struct LinvSite {
    int f = -1;
    LuneEnd u, v;
    int m1 = -1, m2 = -1;
    std::vector<uint8_t> raw;
    int variant = -1;
};

std::optional<LuneEnd> analyze_lune_end(const Skeleton& sk, int vertex, int pair, int f) {
    LuneEnd le;
    le.vertex = vertex;
    const Vertex& vx = sk.vertices[vertex];
    if (vx.wall[pair].face != f) return std::nullopt;
    auto [i, j] = kPairs[pair];
    int lam = vwall_s0_pos(vx, pair);
    int p = i + j - lam;
    int x = -1, y = -1;
    for (int q = 0; q < 4; ++q)
        if (q != lam && q != p) (x < 0 ? x : y) = q;
    int pe = pair_index(x, y);
    le.disc = vx.wall[pe].face;
    int bpos = vwall_s0_pos(vx, pe);
    int tpos = x + y - bpos;
    le.role_of_pos[lam] = 0;
    le.role_of_pos[p] = 1;
    le.role_of_pos[tpos] = 2;
    le.role_of_pos[bpos] = 3;
    for (int q = 0; q < 4; ++q) le.pos_of_role[le.role_of_pos[q]] = q;
    // classify germs by the missing role
    std::set<int> edges_seen;
    for (int g = 0; g < 4; ++g) {
        const VertexGerm& gm = vx.germ[g];
        edges_seen.insert(gm.edge);
        RoleGerm rg;
        rg.germ = g;
        rg.edge = gm.edge;
        int present = 0;
        for (int t = 0; t < 3; ++t) {
            rg.role_of_slot[t] = le.role_of_pos[gm.slot_pos[t]];
            present |= 1 << rg.role_of_slot[t];
        }
        switch (present ^ 0xF) {
            case 1 << 1: le.strand1 = rg; break;  // missing P
            case 1 << 0: le.strand2 = rg; break;  // missing Lam
            case 1 << 3: le.m_t = rg; break;      // missing B
            case 1 << 2: le.m_b = rg; break;      // missing T
            default: return std::nullopt;
        }
    }
    if (edges_seen.size() != 4) return std::nullopt;
    return le;
}

// walls of a strand germ: the (outer,T) and (B,outer) sheets plus the disc
std::optional<StrandWalls> strand_walls(const Skeleton& sk, const RoleGerm& rg, int junction,
                                        int outer_role, int want_disc) {
    StrandWalls sw;
    const Edge& ed = sk.edges[rg.edge];
    for (int k = 0; k < 3; ++k) {
        int ra = rg.role_of_slot[k], rb = rg.role_of_slot[(k + 1) % 3];
        int s0_role = rg.role_of_slot[wall_s0_slot(ed, k)];
        if ((ra == 2 && rb == 3) || (ra == 3 && rb == 2)) {
            sw.k = k;
            if (ed.wall[k].face != want_disc || s0_role != 3) return std::nullopt;
        } else if (ra == outer_role || rb == outer_role) {
            int other = ra == outer_role ? rb : ra;
            if (other == 2) {
                sw.w1_face = ed.wall[k].face;
                sw.w1_s0_is_t = s0_role == 2;
            } else {
                sw.w2_face = ed.wall[k].face;
                sw.w2_s0_is_b = s0_role == 3;
            }
        } else {
            return std::nullopt;
        }
    }
    if (sw.k < 0 || sw.w1_face < 0 || sw.w2_face < 0) return std::nullopt;
    if (ed.end0 == junction && ed.end1 == junction) return std::nullopt;
    sw.far_end_slot = ed.end0 == junction ? 1 : 0;
    return sw;
}

// check the (Lam,P,T) or (Lam,P,B) lune-edge wall pattern
bool check_m_edge(const Skeleton& sk, const RoleGerm& rg, int inner_role, int f, int w1_face,
                  bool w1_s0_inner, int w2_face, bool w2_s0_inner) {
    const Edge& ed = sk.edges[rg.edge];
    for (int k = 0; k < 3; ++k) {
        int ra = rg.role_of_slot[k], rb = rg.role_of_slot[(k + 1) % 3];
        int s0_role = rg.role_of_slot[wall_s0_slot(ed, k)];
        int lo = std::min(ra, rb), hi = std::max(ra, rb);
        if (lo == 0 && hi == 1) {
            if (ed.wall[k].face != f || s0_role != 0) return false;
        } else if (hi == inner_role && lo == 0) {
            if (ed.wall[k].face != w1_face || (s0_role == inner_role) != w1_s0_inner) return false;
        } else if (hi == inner_role && lo == 1) {
            if (ed.wall[k].face != w2_face || (s0_role == inner_role) != w2_s0_inner) return false;
        } else {
            return false;
        }
    }
    return true;
}

std::optional<LinvSite> analyze_Linv(const Skeleton& sk, const LocalOrder& bits, int f) {
    if (!disc_qualifies(sk, f)) return std::nullopt;
    std::vector<std::vector<BoundaryItem>> cycles;
    try {
        cycles = trace_face_boundary(sk, f);
    } catch (const validation_error&) {
        return std::nullopt;
    }
    if (cycles.size() != 1 || cycles[0].size() != 4) return std::nullopt;
    const auto& cyc = cycles[0];
    if (cyc[0].kind != BoundaryItem::EdgeRun || cyc[1].kind != BoundaryItem::VertexCorner ||
        cyc[2].kind != BoundaryItem::EdgeRun || cyc[3].kind != BoundaryItem::VertexCorner)
        return std::nullopt;
    LinvSite site;
    site.f = f;
    site.m1 = cyc[0].id;
    site.m2 = cyc[2].id;
    if (site.m1 == site.m2 || cyc[1].id == cyc[3].id) return std::nullopt;
    auto ue = analyze_lune_end(sk, cyc[1].id, cyc[1].slot, f);
    auto ve = analyze_lune_end(sk, cyc[3].id, cyc[3].slot, f);
    if (!ue || !ve) return std::nullopt;
    site.u = *ue;
    site.v = *ve;
    const LuneEnd &u = site.u, &v = site.v;
    // the two junctions must share lune edges, bodies, and disc pieces
    if (u.m_t.edge != v.m_t.edge || u.m_b.edge != v.m_b.edge) return std::nullopt;
    if (std::set<int>{u.m_t.edge, u.m_b.edge} != std::set<int>{site.m1, site.m2})
        return std::nullopt;
    for (int r = 0; r < 4; ++r) {
        if (sk.vertices[u.vertex].sector[u.pos_of_role[r]] !=
            sk.vertices[v.vertex].sector[v.pos_of_role[r]])
            return std::nullopt;
    }
    int e_f = u.disc, e_b = v.disc;
    if (e_f == e_b || e_f == f || e_b == f) return std::nullopt;
    if (!disc_qualifies(sk, e_f) || !disc_qualifies(sk, e_b)) return std::nullopt;
    if (bits[e_f] != bits[e_b]) return std::nullopt;
    // no exotic self-gluings between front and back halves
    std::set<int> fronts{u.strand1.edge, u.strand2.edge};
    if (fronts.count(v.strand1.edge) || fronts.count(v.strand2.edge)) return std::nullopt;
    auto sw1f = strand_walls(sk, u.strand1, u.vertex, 0, e_f);
    auto sw2f = strand_walls(sk, u.strand2, u.vertex, 1, e_f);
    auto sw1b = strand_walls(sk, v.strand1, v.vertex, 0, e_b);
    auto sw2b = strand_walls(sk, v.strand2, v.vertex, 1, e_b);
    if (!sw1f || !sw2f || !sw1b || !sw2b) return std::nullopt;
    // the half-pairs must carry the same outer sheets
    auto same = [](const StrandWalls& a, const StrandWalls& b) {
        return a.w1_face == b.w1_face && a.w1_s0_is_t == b.w1_s0_is_t &&
               a.w2_face == b.w2_face && a.w2_s0_is_b == b.w2_s0_is_b;
    };
    if (!same(*sw1f, *sw1b) || !same(*sw2f, *sw2b)) return std::nullopt;
    // outer sheets must be disjoint from the lune sheets
    for (int face : {sw1f->w1_face, sw1f->w2_face, sw2f->w1_face, sw2f->w2_face})
        if (face == f || face == e_f || face == e_b) return std::nullopt;
    // lune edges carry the matching sheet pattern
    if (!check_m_edge(sk, u.m_t, 2, f, sw1f->w1_face, sw1f->w1_s0_is_t, sw2f->w1_face,
                      sw2f->w1_s0_is_t))
        return std::nullopt;
    if (!check_m_edge(sk, u.m_b, 3, f, sw1f->w2_face, sw1f->w2_s0_is_b, sw2f->w2_face,
                      sw2f->w2_s0_is_b))
        return std::nullopt;
    site.raw = {static_cast<uint8_t>(bits[sw1f->w1_face] ^ (sw1f->w1_s0_is_t ? 1 : 0)),
                static_cast<uint8_t>(bits[sw1f->w2_face] ^ (sw1f->w2_s0_is_b ? 0 : 1)),
                static_cast<uint8_t>(bits[sw2f->w1_face] ^ (sw2f->w1_s0_is_t ? 1 : 0)),
                static_cast<uint8_t>(bits[sw2f->w2_face] ^ (sw2f->w2_s0_is_b ? 0 : 1)),
                bits[e_f]};
    site.variant = canon_index(MoveKind::Linv, site.raw);
    return site;
}

// merge a front half with its back half, dropping the junction ends
void merge_strand(Builder& bld, const Skeleton& sk, const LinvSite& site, const RoleGerm& front,
                  const RoleGerm& back) {
    Skeleton& out = bld.sk;
    int lf = front.edge, lb = back.edge;
    int s_u = sk.edges[lf].end0 == site.u.vertex ? 0 : 1;
    int s_b = sk.edges[lb].end0 == site.v.vertex ? 0 : 1;
    int far_b = s_b == 0 ? sk.edges[lb].end1 : sk.edges[lb].end0;
    (s_u == 0 ? out.edges[lf].end0 : out.edges[lf].end1) = far_b;
    // boundary bookkeeping of the merged arc
    Edge& med = out.edges[lf];
    int bends = (med.end0 == kBoundaryIn || med.end0 == kBoundaryOut ? 1 : 0) +
                (med.end1 == kBoundaryIn || med.end1 == kBoundaryOut ? 1 : 0);
    med.boundary_chi = bends;
    if (bends == 0) med.bdry = Boundary::none;
    else if (med.end0 == kBoundaryIn || med.end1 == kBoundaryIn) med.bdry = Boundary::in;
    else med.bdry = Boundary::out;
    if (far_b >= 0) {
        int g = germ_index_for(sk, far_b, lb, 1 - s_b);
        Vertex& w = out.vertices[far_b];
        std::array<int, 3> old_pos = w.germ[g].slot_pos;
        w.germ[g].edge = lf;
        for (int tf = 0; tf < 3; ++tf) {
            int role = front.role_of_slot[tf];
            int tb = -1;
            for (int t = 0; t < 3; ++t)
                if (back.role_of_slot[t] == role) tb = t;
            w.germ[g].slot_pos[tf] = old_pos[tb];
        }
        // restore loop-occurrence order if the merged arc closes onto itself
        if (med.end0 == far_b && med.end1 == far_b) {
            int g_other = -1;
            for (int g2 = 0; g2 < 4; ++g2)
                if (g2 != g && w.germ[g2].edge == lf) g_other = g2;
            if (g_other >= 0) {
                int slot_of_g = s_u;  // the rewritten germ now holds the old junction slot
                if ((slot_of_g == 0 && g_other < g) || (slot_of_g == 1 && g < g_other))
                    std::swap(w.germ[g], w.germ[g_other]);
            }
        }
    }
    bld.del_edge[lb] = 1;
}

}  // namespace

std::vector<MoveSite> find_sites_Linv(const Skeleton& sk, const LocalOrder& bits) {
    std::vector<MoveSite> out;
    for (int f = 0; f < static_cast<int>(sk.faces.size()); ++f) {
        if (auto s = analyze_Linv(sk, bits, f)) {
            out.push_back({MoveKind::Linv, s->variant, {f}});
        }
    }
    return out;
}

OrientedResult apply_Linv(const Skeleton& sk, const LocalOrder& bits, const MoveSite& site) {
    if (site.anchors.size() != 1) throw validation_error("collision-inverse move needs 1 anchor");
    int f = site.anchors[0];
    std::optional<LinvSite> found;
    if (f >= 0 && f < static_cast<int>(sk.faces.size())) found = analyze_Linv(sk, bits, f);
    if (!found || found->variant != site.variant)
        throw validation_error("stale collision-inverse site");
    const LinvSite& L = *found;
    int e_f = L.u.disc, e_b = L.v.disc;

    Builder bld(sk, bits);
    Skeleton& out = bld.sk;
    int e_new = bld.add_face(sk.faces[e_f].s0, sk.faces[e_f].s1, 1, bits[e_f]);
    for (auto& ed : out.edges)
        for (int k = 0; k < 3; ++k)
            if (ed.wall[k].face == e_f || ed.wall[k].face == e_b) ed.wall[k].face = e_new;
    for (auto& vx : out.vertices)
        for (int p = 0; p < 6; ++p)
            if (vx.wall[p].face == e_f || vx.wall[p].face == e_b) vx.wall[p].face = e_new;

    merge_strand(bld, sk, L, L.u.strand1, L.v.strand1);
    merge_strand(bld, sk, L, L.u.strand2, L.v.strand2);

    bld.del_face[f] = bld.del_face[e_f] = bld.del_face[e_b] = 1;
    bld.del_edge[L.m1] = bld.del_edge[L.m2] = 1;
    bld.del_vertex[L.u.vertex] = bld.del_vertex[L.v.vertex] = 1;
    return bld.finish("collision-inverse move");
}

}  // namespace otq::detail
