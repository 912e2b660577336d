#include "otq/overlay.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace otq {

namespace {

// --- declarative overlay data --------------------------------------------------
// Two transverse graph copies on a closed surface: the overlay is described by
// its arcs (pieces of graph edges between intersection points) and nodes
// (graph vertices and crossings) with counterclockwise end lists; overlay
// faces are traced from the rotation system unless given explicitly (needed
// when a component is a crossing-free circle, whose faces are not discs).

struct OArc {
    int graph;   // 0 = bottom copy, 1 = top copy
    int edge;    // surface-skeleton edge id
    int n0 = -1; // node ids; both -1 for a closed circle arc
    int n1 = -1;
};

struct OEnd {
    int arc;
    int end;  // 0: the arc starts here, 1: it ends here
};

struct ONode {
    bool crossing = false;
    int graph = -1, vertex = -1;  // for graph-vertex nodes
    std::vector<OEnd> ends;       // ccw; crossings alternate the two graphs,
                                  // vertex nodes follow the surface germ order
};

struct Overlay {
    std::string id;
    SurfaceSkeleton g0, g1;
    std::vector<OArc> arcs;
    std::vector<ONode> nodes;
    // explicit faces (used when tracing cannot see annular faces)
    int nfaces = -1;
    std::vector<int> fL, fR;  // per arc: overlay face left / right of n0->n1
    std::vector<int> face_chi;
};

// --- face tracing ---------------------------------------------------------------

struct Traced {
    int nfaces;
    std::vector<int> fL, fR;
    std::vector<int> face_chi;
};

Traced trace_faces(const Overlay& ov) {
    if (ov.nfaces >= 0) return {ov.nfaces, ov.fL, ov.fR, ov.face_chi};
    const int na = static_cast<int>(ov.arcs.size());
    // dart 2a = arc a traversed n0->n1, dart 2a+1 = the reverse
    auto next_dart = [&](int d) {
        int a = d / 2, dir = d % 2;
        int head = dir == 0 ? ov.arcs[a].n1 : ov.arcs[a].n0;
        if (head < 0) return d;  // circle component: the dart closes on itself
        const ONode& nd = ov.nodes[head];
        int arrive_end = dir == 0 ? 1 : 0;
        int i = -1;
        for (std::size_t k = 0; k < nd.ends.size(); ++k)
            if (nd.ends[k].arc == a && nd.ends[k].end == arrive_end) i = static_cast<int>(k);
        if (i < 0) throw validation_error("overlay node is missing an incident arc end");
        const OEnd& leave = nd.ends[(i + nd.ends.size() - 1) % nd.ends.size()];
        return 2 * leave.arc + (leave.end == 0 ? 0 : 1);
    };
    std::vector<int> face(2 * na, -1);
    int nf = 0;
    for (int d0 = 0; d0 < 2 * na; ++d0) {
        if (face[d0] >= 0) continue;
        for (int d = d0; face[d] < 0; d = next_dart(d)) face[d] = nf;
        ++nf;
    }
    Traced t;
    t.nfaces = nf;
    for (int a = 0; a < na; ++a) {
        t.fL.push_back(face[2 * a]);
        t.fR.push_back(face[2 * a + 1]);
    }
    t.face_chi.assign(nf, 1);  // traced overlays have cellular (disc) faces
    return t;
}

// overlay face between ccw ends k and k+1 of a node = the face to the left of
// the dart leaving through end k
int quadrant_face(const Overlay& ov, const Traced& tr, const ONode& nd, int k) {
    const OEnd& e = nd.ends[k % nd.ends.size()];
    return e.end == 0 ? tr.fL[e.arc] : tr.fR[e.arc];
}

// --- the thickening -------------------------------------------------------------

struct BuildContext {
    const Overlay& ov;
    Traced tr;
    bool closed;
    std::vector<std::array<int, 2>> region;  // per overlay face: containing graph face
    Skeleton sk;
    std::vector<int> of_id;                        // overlay face -> sk face id
    std::array<std::vector<int>, 2> wall_id;       // per graph, per edge -> sk face id
    std::array<std::vector<int>, 2> body_id;       // per graph, per graph face -> sk body id
    std::array<std::vector<int>, 2> vert_edge_id;  // per graph, per vertex -> sk edge id
    std::vector<int> arc_edge_id;                  // per arc -> sk edge id

    int above_g() const { return closed ? 0 : 1; }
    const SurfaceSkeleton& g(int i) const { return i == 0 ? ov.g0 : ov.g1; }
    int body_of(int graph, int r) const { return body_id[closed ? 0 : graph][r]; }
    int body_above(int f) const { return body_of(above_g(), region[f][above_g()]); }
    int body_below(int f) const { return body_of(1 - above_g(), region[f][1 - above_g()]); }
};

void solve_regions(BuildContext& cx) {
    const Overlay& ov = cx.ov;
    cx.region.assign(cx.tr.nfaces, {-1, -1});
    auto put = [&](int f, int g, int r) {
        int& slot = cx.region[f][g];
        if (slot >= 0 && slot != r) throw validation_error("overlay region data is inconsistent");
        bool changed = slot < 0;
        slot = r;
        return changed;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < ov.arcs.size(); ++a) {
            int g = ov.arcs[a].graph;
            const SEdge& ed = cx.g(g).edges[ov.arcs[a].edge];
            changed |= put(cx.tr.fL[a], g, ed.f0);
            changed |= put(cx.tr.fR[a], g, ed.f1);
            // the other copy does not cross this arc
            int o = 1 - g;
            int rl = cx.region[cx.tr.fL[a]][o], rr = cx.region[cx.tr.fR[a]][o];
            if (rl >= 0) changed |= put(cx.tr.fR[a], o, rl);
            if (rr >= 0) changed |= put(cx.tr.fL[a], o, rr);
        }
    }
    for (const auto& r : cx.region) {
        if (r[0] < 0 || r[1] < 0) throw validation_error("overlay region assignment is incomplete");
    }
}

void emit_bodies_and_faces(BuildContext& cx) {
    const bool closed = cx.closed;
    for (int g = 0; g < (closed ? 1 : 2); ++g) {
        for (std::size_t r = 0; r < cx.g(g).faces.size(); ++r) {
            if (cx.g(g).faces[r].chi != 1) {
                throw validation_error("overlay thickening needs disc graph regions");
            }
            Body b;
            b.chi = 1;
            b.boundary_chi = closed ? 0 : 1;
            b.bdry = closed ? Boundary::none : (g == 0 ? Boundary::in : Boundary::out);
            b.is_ball_certified = true;  // an open prism over a disc region
            cx.body_id[g].push_back(static_cast<int>(cx.sk.bodies.size()));
            cx.sk.bodies.push_back(b);
        }
        if (closed) cx.body_id[1] = cx.body_id[0];
    }
    for (std::size_t f = 0; f < static_cast<std::size_t>(cx.tr.nfaces); ++f) {
        Face fc;
        fc.s0 = cx.body_above(static_cast<int>(f));
        fc.s1 = cx.body_below(static_cast<int>(f));
        fc.chi = cx.tr.face_chi[f];
        cx.of_id.push_back(static_cast<int>(cx.sk.faces.size()));
        cx.sk.faces.push_back(fc);
    }
    for (int g = 0; g < (closed ? 1 : 2); ++g) {
        for (std::size_t e = 0; e < cx.g(g).edges.size(); ++e) {
            const SEdge& ed = cx.g(g).edges[e];
            Face fc;
            fc.s0 = cx.body_of(g, ed.f0);
            fc.s1 = cx.body_of(g, ed.f1);
            fc.chi = ed.chi;  // square over an arc, annulus over a circle
            fc.boundary_chi = closed ? 0 : ed.chi;
            fc.bdry = closed ? Boundary::none : (g == 0 ? Boundary::in : Boundary::out);
            cx.wall_id[g].push_back(static_cast<int>(cx.sk.faces.size()));
            cx.sk.faces.push_back(fc);
        }
        if (closed) cx.wall_id[1] = cx.wall_id[0];
    }
}

void emit_sheet_arcs(BuildContext& cx) {
    const Overlay& ov = cx.ov;
    for (std::size_t a = 0; a < ov.arcs.size(); ++a) {
        const OArc& arc = ov.arcs[a];
        const SEdge& sed = cx.g(arc.graph).edges[arc.edge];
        int W = cx.wall_id[arc.graph][arc.edge];
        int left = cx.body_of(arc.graph, sed.f0);
        int right = cx.body_of(arc.graph, sed.f1);
        int fl = cx.of_id[cx.tr.fL[a]], fr = cx.of_id[cx.tr.fR[a]];
        Edge ed;
        if (arc.graph == cx.above_g()) {
            int below = cx.body_below(cx.tr.fL[a]);
            ed.sector = {below, right, left};
            ed.wall = {Wall{fr, true}, Wall{W, true}, Wall{fl, false}};
        } else {
            int above = cx.body_above(cx.tr.fL[a]);
            ed.sector = {above, left, right};
            ed.wall = {Wall{fl, false}, Wall{W, false}, Wall{fr, true}};
        }
        ed.end0 = arc.n0 < 0 ? kCircle : arc.n0;
        ed.end1 = arc.n1 < 0 ? kCircle : arc.n1;
        ed.chi = arc.n0 < 0 ? 0 : 1;
        cx.arc_edge_id.push_back(static_cast<int>(cx.sk.edges.size()));
        cx.sk.edges.push_back(ed);
    }
}

void emit_vertical_edges(BuildContext& cx) {
    const Overlay& ov = cx.ov;
    const bool closed = cx.closed;
    // node lookup: (graph, vertex) -> node id
    std::map<std::pair<int, int>, int> node_of;
    for (std::size_t n = 0; n < ov.nodes.size(); ++n) {
        if (!ov.nodes[n].crossing) node_of[{ov.nodes[n].graph, ov.nodes[n].vertex}] = static_cast<int>(n);
    }
    for (int g = 0; g < (closed ? 1 : 2); ++g) {
        for (std::size_t v = 0; v < cx.g(g).vertices.size(); ++v) {
            const SVertex& sv = cx.g(g).vertices[v];
            Edge ed;
            for (int k = 0; k < 3; ++k) ed.sector[k] = cx.body_of(g, sv.face[k]);
            for (int k = 0; k < 3; ++k) {
                const SEdgeGerm& gm = sv.germ[(k + 1) % 3];
                ed.wall[k] = Wall{cx.wall_id[g][gm.edge], gm.end == 0};
            }
            ed.chi = 1;
            if (closed) {
                ed.end0 = node_of.at({0, static_cast<int>(v)});  // unprimed: walls above
                ed.end1 = node_of.at({1, static_cast<int>(v)});  // primed: walls below
            } else if (g == 0) {
                ed.end0 = kBoundaryIn;
                ed.end1 = node_of.at({0, static_cast<int>(v)});
                ed.boundary_chi = 1;
                ed.bdry = Boundary::in;
            } else {
                ed.end0 = node_of.at({1, static_cast<int>(v)});
                ed.end1 = kBoundaryOut;
                ed.boundary_chi = 1;
                ed.bdry = Boundary::out;
            }
            cx.vert_edge_id[g].push_back(static_cast<int>(cx.sk.edges.size()));
            cx.sk.edges.push_back(ed);
        }
        if (closed) cx.vert_edge_id[1] = cx.vert_edge_id[0];
    }
}

void emit_crossing(BuildContext& cx, int n) {
    const Overlay& ov = cx.ov;
    const ONode& nd = ov.nodes[n];
    if (nd.ends.size() != 4) throw validation_error("a crossing needs four arc ends");
    const int above = cx.above_g();
    int ka = -1, kb = -1;
    for (int k = 0; k < 4; ++k) {
        int g = ov.arcs[nd.ends[k].arc].graph;
        if (g == above && ka < 0) ka = k;
        if (g != above && kb < 0) kb = k;
    }
    if (ka < 0 || kb < 0 || (kb - ka) % 2 == 0) {
        throw validation_error("crossing ends must alternate between the two copies");
    }
    auto quad = [&](int k) { return quadrant_face(ov, cx.tr, nd, ((k % 4) + 4) % 4); };
    // positions: 0/1 above the sheet on either side of the above-copy arc,
    // 2/3 below on either side of the below-copy arc
    Vertex vx;
    vx.sector[0] = cx.body_above(quad(ka));
    vx.sector[1] = cx.body_above(quad(ka + 2));
    vx.sector[2] = cx.body_below(quad(kb));
    vx.sector[3] = cx.body_below(quad(kb + 2));
    // side positions of quadrant k: above 0 if k in {ka, ka+1}, below 2 if in {kb, kb+1}
    auto q_above = [&](int k) { return ((k % 4 + 4) % 4 == ka || (k % 4 + 4) % 4 == (ka + 1) % 4) ? 0 : 1; };
    auto q_below = [&](int k) { return ((k % 4 + 4) % 4 == kb || (k % 4 + 4) % 4 == (kb + 1) % 4) ? 2 : 3; };
    const OArc& arc_a = ov.arcs[nd.ends[ka].arc];
    const OArc& arc_b = ov.arcs[nd.ends[kb].arc];
    int Wa = cx.wall_id[arc_a.graph][arc_a.edge];
    int Wb = cx.wall_id[arc_b.graph][arc_b.edge];
    // f0 of the above-copy edge lies to the left of travel: leaving through
    // end ka means the left side spans quadrants {ka, ka+1}
    bool a_out = nd.ends[ka].end == 0;
    bool b_out = nd.ends[kb].end == 0;
    vx.wall[pair_index(0, 1)] = Wall{Wa, !a_out};   // f0 side = position 0 iff outgoing
    vx.wall[pair_index(2, 3)] = Wall{Wb, !b_out};
    for (int k = 0; k < 4; ++k) {
        int i = q_above(k), j = q_below(k);
        vx.wall[pair_index(i, j)] = Wall{cx.of_id[quad(k)], false};
    }
    for (int k = 0; k < 4; ++k) {
        const OEnd& e = nd.ends[k];
        const OArc& arc = ov.arcs[e.arc];
        bool out = e.end == 0;
        VertexGerm gm;
        gm.edge = cx.arc_edge_id[e.arc];
        if (arc.graph == above) {
            // the below body at this end spans its two adjacent quadrants
            if (q_below(k) != q_below(k - 1)) throw validation_error("crossing quadrant sides disagree");
            int left = q_above(k);  // travel-left side when leaving through end k
            int tl = out ? left : 1 - left;
            gm.slot_pos = {q_below(k), 1 - tl, tl};  // arc slots: below, right, left
        } else {
            if (q_above(k) != q_above(k - 1)) throw validation_error("crossing quadrant sides disagree");
            int left = q_below(k);
            int bl = out ? left : 5 - left;
            gm.slot_pos = {q_above(k), bl, 5 - bl};  // arc slots: above, left, right
        }
        vx.germ[k] = gm;
    }
    cx.sk.vertices.push_back(vx);
}

void emit_vertex_node(BuildContext& cx, int n) {
    const Overlay& ov = cx.ov;
    const ONode& nd = ov.nodes[n];
    if (nd.ends.size() != 3) throw validation_error("a graph-vertex node needs three arc ends");
    const int g = nd.graph;
    const SVertex& sv = cx.g(g).vertices[nd.vertex];
    // attach side: where this copy's walls (and the vertical edge) leave the sheet
    bool attach_above = cx.closed ? (g == 0) : (g == 1);
    Vertex vx;
    int f0face = quadrant_face(ov, cx.tr, nd, 0);
    vx.sector[0] = attach_above ? cx.body_below(f0face) : cx.body_above(f0face);
    for (int m = 0; m < 3; ++m) vx.sector[1 + m] = cx.body_of(g, sv.face[m]);
    for (int m = 0; m < 3; ++m) {
        int F = quadrant_face(ov, cx.tr, nd, m);
        if (cx.region[F][g] != sv.face[m]) {
            throw validation_error("overlay vertex ends disagree with the surface germ order");
        }
        // wall between the off-sheet body (position 0) and region body 1+m:
        // the overlay face's upper side is position 1+m when attaching above
        vx.wall[pair_index(0, 1 + m)] = Wall{cx.of_id[F], attach_above};
    }
    for (int k = 0; k < 3; ++k) {
        const SEdgeGerm& gm = sv.germ[(k + 1) % 3];
        int i = 1 + k, j = 1 + (k + 1) % 3;
        int f0pos = gm.end == 0 ? j : i;  // f0 region = face[k+1] when outgoing
        vx.wall[pair_index(std::min(i, j), std::max(i, j))] =
            Wall{cx.wall_id[g][gm.edge], f0pos == std::max(i, j)};
    }
    // germ 0: the vertical edge, canonical slots = the three regions in order
    VertexGerm vert;
    vert.edge = cx.vert_edge_id[g][nd.vertex];
    vert.slot_pos = {1, 2, 3};
    vx.germ[0] = vert;
    for (int m = 0; m < 3; ++m) {
        const OEnd& e = nd.ends[m];
        bool out = e.end == 0;
        // consistency with the surface skeleton's germ table
        if (sv.germ[m].edge != ov.arcs[e.arc].edge || sv.germ[m].end != e.end) {
            throw validation_error("overlay vertex ends must follow the surface germ order");
        }
        int posL = 1 + (out ? m : (m + 2) % 3);  // f0-side region position
        int posR = 1 + (out ? (m + 2) % 3 : m);
        VertexGerm gm;
        gm.edge = cx.arc_edge_id[e.arc];
        gm.slot_pos = attach_above ? std::array<int, 3>{0, posR, posL}   // slots: below, right, left
                                   : std::array<int, 3>{0, posL, posR};  // slots: above, left, right
        vx.germ[1 + m] = gm;
    }
    cx.sk.vertices.push_back(vx);
}

CylinderSkeleton build(const Overlay& ov, bool closed) {
    BuildContext cx{ov, trace_faces(ov), closed, {}, {}, {}, {}, {}, {}, {}};
    solve_regions(cx);
    cx.sk.id = ov.id + (closed ? ":closed" : ":cylinder");
    emit_bodies_and_faces(cx);
    emit_sheet_arcs(cx);
    emit_vertical_edges(cx);
    for (std::size_t n = 0; n < ov.nodes.size(); ++n) {
        if (ov.nodes[n].crossing) emit_crossing(cx, static_cast<int>(n));
        else emit_vertex_node(cx, static_cast<int>(n));
    }
    cx.sk.require_valid();
    CylinderSkeleton out;
    out.sk = std::move(cx.sk);
    out.bottom = ov.g0;
    out.top = ov.g1;
    out.bottom_wall = cx.wall_id[0];
    out.top_wall = cx.wall_id[1];
    return out;
}

// --- the overlay library ---------------------------------------------------------

Overlay overlay_s2_parallel(bool flip) {
    Overlay ov;
    ov.id = flip ? "s2_parallel_flip" : "s2_parallel";
    ov.g0 = library_surface("s2_circle");
    ov.g1 = ov.g0;
    int b = flip ? 1 : 0;
    ov.arcs = {OArc{b, 0}, OArc{1 - b, 0}};
    ov.nfaces = 3;  // cap, band, cap: the band is an annulus
    ov.fL = {0, 1};
    ov.fR = {1, 2};
    ov.face_chi = {1, 0, 1};
    return ov;
}

Overlay overlay_s2_cross(bool flip) {
    Overlay ov;
    ov.id = flip ? "s2_cross_flip" : "s2_cross";
    ov.g0 = library_surface("s2_circle");
    ov.g1 = ov.g0;
    int b = flip ? 1 : 0;
    // equator pieces c1, c2 (copy b), meridian pieces k1, k2 (copy 1-b)
    ov.arcs = {OArc{b, 0, 0, 1}, OArc{b, 0, 1, 0}, OArc{1 - b, 0, 0, 1}, OArc{1 - b, 0, 1, 0}};
    ONode q1;
    q1.crossing = true;
    q1.ends = {OEnd{0, 0}, OEnd{2, 0}, OEnd{1, 1}, OEnd{3, 1}};  // east, north, west, south
    ONode q2;
    q2.crossing = true;
    q2.ends = {OEnd{1, 0}, OEnd{2, 1}, OEnd{0, 1}, OEnd{3, 0}};
    ov.nodes = {q1, q2};
    return ov;
}

Overlay overlay_t2_theta(bool flip) {
    Overlay ov;
    ov.id = flip ? "t2_theta_flip" : "t2_theta";
    ov.g0 = library_surface("t2_theta");
    ov.g1 = ov.g0;
    int b = flip ? 1 : 0;
    // copy b: a = a1,a2 split at the crossing P_X; b-edge = bY,bX split at P_Y;
    // c whole. copy 1-b: a' = a'1,a'2 split at P_Y; b' = b'Y,b'X split at P_X;
    // c' whole. node ids: X=0, Y=1, X'=2, Y'=3, P_X=4, P_Y=5
    enum { a1, a2, bY, bX, cc, p1, p2, pbY, pbX, pcc };
    ov.arcs = {
        OArc{b, 0, 0, 4},      // a1: X -> P_X
        OArc{b, 0, 4, 1},      // a2: P_X -> Y
        OArc{b, 1, 1, 5},      // bY: Y -> P_Y
        OArc{b, 1, 5, 0},      // bX: P_Y -> X
        OArc{b, 2, 0, 1},      // c : X -> Y
        OArc{1 - b, 0, 2, 5},  // a'1: X' -> P_Y
        OArc{1 - b, 0, 5, 3},  // a'2: P_Y -> Y'
        OArc{1 - b, 1, 3, 4},  // b'Y: Y' -> P_X
        OArc{1 - b, 1, 4, 2},  // b'X: P_X -> X'
        OArc{1 - b, 2, 2, 3},  // c' : X' -> Y'
    };
    auto vertex_node = [&](int graph, int vertex, std::vector<OEnd> ends) {
        ONode nd;
        nd.graph = graph;
        nd.vertex = vertex;
        nd.ends = std::move(ends);
        return nd;
    };
    auto crossing_node = [&](std::vector<OEnd> ends) {
        ONode nd;
        nd.crossing = true;
        nd.ends = std::move(ends);
        return nd;
    };
    ov.nodes = {
        vertex_node(b, 0, {OEnd{a1, 0}, OEnd{cc, 0}, OEnd{bX, 1}}),        // X
        vertex_node(b, 1, {OEnd{bY, 0}, OEnd{a2, 1}, OEnd{cc, 1}}),        // Y
        vertex_node(1 - b, 0, {OEnd{p1, 0}, OEnd{pcc, 0}, OEnd{pbX, 1}}),  // X'
        vertex_node(1 - b, 1, {OEnd{pbY, 0}, OEnd{p2, 1}, OEnd{pcc, 1}}),  // Y'
        crossing_node({OEnd{a2, 0}, OEnd{pbX, 0}, OEnd{a1, 1}, OEnd{pbY, 1}}),  // P_X
        crossing_node({OEnd{p2, 0}, OEnd{bX, 0}, OEnd{p1, 1}, OEnd{bY, 1}}),    // P_Y
    };
    return ov;
}

}  // namespace

CylinderSkeleton make_cylinder(const std::string& kind) {
    if (kind == "s2_parallel") return build(overlay_s2_parallel(false), false);
    if (kind == "s2_parallel_flip") return build(overlay_s2_parallel(true), false);
    if (kind == "s2_cross") return build(overlay_s2_cross(false), false);
    if (kind == "s2_cross_flip") return build(overlay_s2_cross(true), false);
    if (kind == "t2_theta") return build(overlay_t2_theta(false), false);
    if (kind == "t2_theta_flip") return build(overlay_t2_theta(true), false);
    throw validation_error("unknown cylinder kind: " + kind);
}

Skeleton make_t3_dual() {
    Skeleton sk = build(overlay_t2_theta(false), true).sk;
    sk.id = "t3_dual";
    return sk;
}

Skeleton make_cylinder_skeleton(const std::string& name) {
    if (name.rfind("cylinder(", 0) == 0 && name.back() == ')') {
        return make_cylinder(name.substr(9, name.size() - 10)).sk;
    }
    throw validation_error("unknown cylinder skeleton name: " + name);
}

}  // namespace otq
