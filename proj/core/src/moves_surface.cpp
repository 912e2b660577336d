#include "moves_common.hpp"

// Rewrite moves on surface skeleta: the bigon pocket move (b) along one side
// of a 1-stratum, its inverse, and the edge flip (l) between two trivalent
// 0-strata together with its exact inverse.

namespace otq {

namespace {

// face of an edge germ: f0 of an outgoing germ k sits at vertex face slot k,
// of an incoming germ at slot (k+2)%3
int germ_face_slot_f0(const SEdgeGerm& g, int k) { return g.end == 0 ? k : (k + 2) % 3; }

SurfaceSkeleton compact(const SurfaceSkeleton& in, const std::vector<char>& del_face,
                        const std::vector<char>& del_edge, const std::vector<char>& del_vertex) {
    SurfaceSkeleton out;
    out.id = in.id;
    std::vector<int> mf(in.faces.size(), -1), me(in.edges.size(), -1), mv(in.vertices.size(), -1);
    for (size_t i = 0; i < in.faces.size(); ++i)
        if (!del_face[i]) {
            mf[i] = static_cast<int>(out.faces.size());
            out.faces.push_back(in.faces[i]);
        }
    for (size_t i = 0; i < in.edges.size(); ++i)
        if (!del_edge[i]) {
            me[i] = static_cast<int>(out.edges.size());
            out.edges.push_back(in.edges[i]);
        }
    for (size_t i = 0; i < in.vertices.size(); ++i)
        if (!del_vertex[i]) {
            mv[i] = static_cast<int>(out.vertices.size());
            out.vertices.push_back(in.vertices[i]);
        }
    auto remap = [](int& x, const std::vector<int>& m) {
        if (x < 0) return;
        if (m[x] < 0) throw std::logic_error("surface move left a dangling reference");
        x = m[x];
    };
    for (auto& e : out.edges) {
        remap(e.f0, mf);
        remap(e.f1, mf);
        remap(e.v0, mv);
        remap(e.v1, mv);
    }
    for (auto& v : out.vertices) {
        for (int k = 0; k < 3; ++k) {
            remap(v.germ[k].edge, me);
            remap(v.face[k], mf);
        }
    }
    out.require_valid();
    return out;
}

int& end_ref(SEdge& e, int slot) { return slot == 0 ? e.v0 : e.v1; }

int germ_slot_for(const SVertex& vx, int edge, int end) {
    for (int k = 0; k < 3; ++k)
        if (vx.germ[k].edge == edge && vx.germ[k].end == end) return k;
    throw std::logic_error("missing surface germ");
}

SurfaceSkeleton apply_b(const SurfaceSkeleton& ss, int E, int s) {
    if (E < 0 || E >= static_cast<int>(ss.edges.size()) || (s != 0 && s != 1))
        throw validation_error("bad bigon site");
    SurfaceSkeleton out = ss;
    const SEdge old = ss.edges[E];
    int L = old.f0, R = old.f1;
    int g = static_cast<int>(out.faces.size());
    out.faces.push_back(SFace{1});
    int u = static_cast<int>(out.vertices.size());
    int v = u + 1;
    out.vertices.emplace_back();
    out.vertices.emplace_back();

    int E1 = E, E2;
    if (old.v0 == kCircle) {
        // circle: the reused stratum becomes the arc from v back to u
        out.edges[E].v0 = v;
        out.edges[E].v1 = u;
        out.edges[E].chi = 1;
        E2 = E;
    } else {
        out.edges[E].v1 = u;
        SEdge e2;
        e2.f0 = L;
        e2.f1 = R;
        e2.v0 = v;
        e2.v1 = old.v1;
        E2 = static_cast<int>(out.edges.size());
        out.edges.push_back(e2);
        if (old.v1 >= 0) {
            int k = germ_slot_for(ss.vertices[old.v1], E, 1);
            out.vertices[old.v1].germ[k] = SEdgeGerm{E2, 1};
        }
    }
    SEdge m, d;
    m.v0 = u;
    m.v1 = v;
    d.v0 = u;
    d.v1 = v;
    if (s == 0) {  // bigon on the f0 side
        m.f0 = g;
        m.f1 = R;
        d.f0 = L;
        d.f1 = g;
    } else {  // bigon on the f1 side
        m.f0 = L;
        m.f1 = g;
        d.f0 = g;
        d.f1 = R;
    }
    int mi = static_cast<int>(out.edges.size());
    out.edges.push_back(m);
    int di = mi + 1;
    out.edges.push_back(d);

    SVertex& uu = out.vertices[u];
    SVertex& vv = out.vertices[v];
    uu.face = {R, g, L};
    vv.face = {L, g, R};
    if (s == 0) {
        uu.germ = {SEdgeGerm{E1, 1}, SEdgeGerm{mi, 0}, SEdgeGerm{di, 0}};
        vv.germ = {SEdgeGerm{E2, 0}, SEdgeGerm{di, 1}, SEdgeGerm{mi, 1}};
    } else {
        uu.germ = {SEdgeGerm{E1, 1}, SEdgeGerm{di, 0}, SEdgeGerm{mi, 0}};
        vv.germ = {SEdgeGerm{E2, 0}, SEdgeGerm{mi, 1}, SEdgeGerm{di, 1}};
    }
    out.require_valid();
    return out;
}

struct BinvSite {
    int g = -1, u = -1, v = -1;
    int gLeft = -1, gRight = -1;  // the two bigon edges, by effective side
    int E1 = -1, e1end = -1;      // third edge at u and its end slot there
    int E2 = -1, e2end = -1;      // third edge at v
};

std::optional<BinvSite> analyze_binv(const SurfaceSkeleton& ss, int g) {
    if (ss.faces[g].chi != 1) return std::nullopt;
    BinvSite site;
    site.g = g;
    std::vector<std::pair<int, int>> occ;  // {edge, side}
    for (int e = 0; e < static_cast<int>(ss.edges.size()); ++e) {
        if (ss.edges[e].f0 == g) occ.push_back({e, 0});
        if (ss.edges[e].f1 == g) occ.push_back({e, 1});
    }
    if (occ.size() != 2 || occ[0].first == occ[1].first) return std::nullopt;
    int m = occ[0].first, d = occ[1].first;
    const SEdge &em = ss.edges[m], &ed = ss.edges[d];
    if (em.v0 < 0 || em.v1 < 0 || em.v0 == em.v1) return std::nullopt;
    if (std::minmax(em.v0, em.v1) != std::minmax(ed.v0, ed.v1)) return std::nullopt;
    site.u = std::min(em.v0, em.v1);
    site.v = std::max(em.v0, em.v1);
    int count_u = 0, count_v = 0;
    for (int w = 0; w < static_cast<int>(ss.vertices.size()); ++w) {
        for (int k = 0; k < 3; ++k) {
            if (ss.vertices[w].face[k] != g) continue;
            if (w == site.u) count_u++;
            else if (w == site.v) count_v++;
            else return std::nullopt;
        }
    }
    if (count_u != 1 || count_v != 1) return std::nullopt;
    // effective sides of the bigon edges in the u -> v frame
    auto eff = [&](const SEdge& e) {
        return e.v0 == site.u ? std::pair(e.f0, e.f1) : std::pair(e.f1, e.f0);
    };
    auto [mf0, mf1] = eff(em);
    auto [df0, df1] = eff(ed);
    int outerL, outerR;
    if (mf1 == g && df0 == g) {
        site.gLeft = m;
        site.gRight = d;
        outerL = mf0;
        outerR = df1;
    } else if (df1 == g && mf0 == g) {
        site.gLeft = d;
        site.gRight = m;
        outerL = df0;
        outerR = mf1;
    } else {
        return std::nullopt;
    }
    // third edges at the junctions
    auto third = [&](int w, int& edge, int& end) {
        for (int k = 0; k < 3; ++k) {
            const SEdgeGerm& gm = ss.vertices[w].germ[k];
            if (gm.edge != m && gm.edge != d) {
                edge = gm.edge;
                end = gm.end;
                return;
            }
        }
    };
    third(site.u, site.E1, site.e1end);
    third(site.v, site.E2, site.e2end);
    if (site.E1 < 0 || site.E2 < 0) return std::nullopt;
    const SEdge &e1 = ss.edges[site.E1], &e2 = ss.edges[site.E2];
    // arriving at u and departing from v, both must see (outerL, outerR)
    auto arrival = site.e1end == 1 ? std::pair(e1.f0, e1.f1) : std::pair(e1.f1, e1.f0);
    auto departure = site.e2end == 0 ? std::pair(e2.f0, e2.f1) : std::pair(e2.f1, e2.f0);
    if (arrival != std::pair(outerL, outerR) || departure != std::pair(outerL, outerR))
        return std::nullopt;
    if (site.E1 == site.E2 && site.e1end == site.e2end) return std::nullopt;
    return site;
}

SurfaceSkeleton apply_binv(const SurfaceSkeleton& ss, int g) {
    std::optional<BinvSite> site;
    if (g >= 0 && g < static_cast<int>(ss.faces.size())) site = analyze_binv(ss, g);
    if (!site) throw validation_error("stale bigon-inverse site");
    SurfaceSkeleton out = ss;
    std::vector<char> del_face(ss.faces.size(), 0), del_edge(ss.edges.size(), 0),
        del_vertex(ss.vertices.size(), 0);
    if (site->E1 == site->E2) {
        // the outer strand closes up into a circle
        SEdge& x = out.edges[site->E1];
        x.v0 = x.v1 = kCircle;
        x.chi = 0;
    } else {
        int far_slot = 1 - site->e2end;
        int far = far_slot == 0 ? ss.edges[site->E2].v0 : ss.edges[site->E2].v1;
        end_ref(out.edges[site->E1], site->e1end) = far;
        if (far >= 0) {
            int k = germ_slot_for(ss.vertices[far], site->E2, far_slot);
            out.vertices[far].germ[k] = SEdgeGerm{site->E1, site->e1end};
        }
        del_edge[site->E2] = 1;
    }
    del_face[g] = 1;
    del_edge[site->gLeft] = 1;
    del_edge[site->gRight] = 1;
    del_vertex[site->u] = 1;
    del_vertex[site->v] = 1;
    return compact(out, del_face, del_edge, del_vertex);
}

// frame of a flip site: germ arrays rotated so the host edge comes first
struct FlipFrame {
    int u = -1, v = -1;
    int ru = -1, rv = -1;             // original array slots of the host germs
    std::array<SEdgeGerm, 3> ug, vg;  // ug[0] = (E,0), vg[0] = (E,1)
    int L = -1, Xu = -1, R = -1, Xv = -1;
};

std::optional<FlipFrame> flip_frame(const SurfaceSkeleton& ss, int E) {
    const SEdge& e = ss.edges[E];
    if (e.v0 < 0 || e.v1 < 0 || e.v0 == e.v1) return std::nullopt;
    FlipFrame fr;
    fr.u = e.v0;
    fr.v = e.v1;
    const SVertex &uu = ss.vertices[fr.u], &vv = ss.vertices[fr.v];
    int ru = germ_slot_for(uu, E, 0), rv = germ_slot_for(vv, E, 1);
    fr.ru = ru;
    fr.rv = rv;
    for (int k = 0; k < 3; ++k) {
        fr.ug[k] = uu.germ[(ru + k) % 3];
        fr.vg[k] = vv.germ[(rv + k) % 3];
    }
    fr.L = uu.face[ru];
    fr.Xu = uu.face[(ru + 1) % 3];
    fr.R = uu.face[(ru + 2) % 3];
    fr.Xv = vv.face[(rv + 1) % 3];
    return fr;
}

SurfaceSkeleton apply_flip(const SurfaceSkeleton& ss, int E, bool inverse) {
    std::optional<FlipFrame> fr;
    if (E >= 0 && E < static_cast<int>(ss.edges.size())) fr = flip_frame(ss, E);
    if (!fr) throw validation_error("stale flip site");
    SurfaceSkeleton out = ss;
    const SEdgeGerm p = fr->ug[1], q = fr->ug[2], r = fr->vg[1], s = fr->vg[2];
    std::array<SEdgeGerm, 3> ug, vg;
    std::array<int, 3> uf, vf;
    if (!inverse) {
        out.edges[E].f0 = fr->Xv;
        out.edges[E].f1 = fr->Xu;
        ug = {SEdgeGerm{E, 0}, s, p};
        uf = {fr->Xv, fr->L, fr->Xu};
        vg = {SEdgeGerm{E, 1}, q, r};
        vf = {fr->Xu, fr->R, fr->Xv};
        end_ref(out.edges[s.edge], s.end) = fr->u;
        end_ref(out.edges[q.edge], q.end) = fr->v;
    } else {
        out.edges[E].f0 = fr->Xu;
        out.edges[E].f1 = fr->Xv;
        ug = {SEdgeGerm{E, 0}, q, r};
        uf = {fr->Xu, fr->R, fr->Xv};
        vg = {SEdgeGerm{E, 1}, s, p};
        vf = {fr->Xv, fr->L, fr->Xu};
        end_ref(out.edges[r.edge], r.end) = fr->u;
        end_ref(out.edges[p.edge], p.end) = fr->v;
    }
    // write back in the original array rotation so the inverse is exact
    SVertex &uu = out.vertices[fr->u], &vv = out.vertices[fr->v];
    for (int k = 0; k < 3; ++k) {
        uu.germ[(fr->ru + k) % 3] = ug[k];
        uu.face[(fr->ru + k) % 3] = uf[k];
        vv.germ[(fr->rv + k) % 3] = vg[k];
        vv.face[(fr->rv + k) % 3] = vf[k];
    }
    out.require_valid();
    return out;
}

}  // namespace

std::string to_string(SurfaceMoveKind kind) {
    switch (kind) {
        case SurfaceMoveKind::b: return "b";
        case SurfaceMoveKind::binv: return "b_inv";
        case SurfaceMoveKind::l: return "l";
        case SurfaceMoveKind::linv: return "l_inv";
    }
    throw std::logic_error("bad surface move kind");
}

std::vector<SurfaceMoveSite> find_surface_sites(const SurfaceSkeleton& ss, SurfaceMoveKind kind) {
    std::vector<SurfaceMoveSite> out;
    switch (kind) {
        case SurfaceMoveKind::b:
            for (int e = 0; e < static_cast<int>(ss.edges.size()); ++e)
                for (int s = 0; s < 2; ++s) out.push_back({kind, {e, s}});
            break;
        case SurfaceMoveKind::binv:
            for (int g = 0; g < static_cast<int>(ss.faces.size()); ++g)
                if (analyze_binv(ss, g)) out.push_back({kind, {g}});
            break;
        case SurfaceMoveKind::l:
        case SurfaceMoveKind::linv:
            for (int e = 0; e < static_cast<int>(ss.edges.size()); ++e)
                if (flip_frame(ss, e)) out.push_back({kind, {e}});
            break;
    }
    return out;
}

SurfaceSkeleton apply_surface_move(const SurfaceSkeleton& ss, const SurfaceMoveSite& site) {
    switch (site.kind) {
        case SurfaceMoveKind::b:
            if (site.anchors.size() != 2) throw validation_error("bigon move needs 2 anchors");
            return apply_b(ss, site.anchors[0], site.anchors[1]);
        case SurfaceMoveKind::binv:
            if (site.anchors.size() != 1)
                throw validation_error("bigon-inverse move needs 1 anchor");
            return apply_binv(ss, site.anchors[0]);
        case SurfaceMoveKind::l:
        case SurfaceMoveKind::linv:
            if (site.anchors.size() != 1) throw validation_error("flip move needs 1 anchor");
            return apply_flip(ss, site.anchors[0], site.kind == SurfaceMoveKind::linv);
    }
    throw std::logic_error("bad surface move kind");
}

}  // namespace otq
