#include "otq/surface.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace otq {

namespace {

// face-germ position that an edge germ assigns side f0 to: germ k separates
// vertex face positions k and k-1; an outgoing edge has f0 at position k,
// an incoming one at position k-1.
int f0_position(const SEdgeGerm& g, int k) { return g.end == 0 ? k : (k + 2) % 3; }

}  // namespace

std::vector<std::string> SurfaceSkeleton::validate() const {
    std::vector<std::string> rep;
    auto bad = [&](const std::string& m) { rep.push_back(m); };
    int nf = static_cast<int>(faces.size());
    int ne = static_cast<int>(edges.size());
    int nv = static_cast<int>(vertices.size());
    for (int f = 0; f < nf; ++f) {
        if (faces[f].chi > 2) bad("2-stratum " + std::to_string(f) + " has chi > 2");
    }
    for (int e = 0; e < ne; ++e) {
        const SEdge& ed = edges[e];
        if (ed.f0 < 0 || ed.f0 >= nf || ed.f1 < 0 || ed.f1 >= nf) {
            bad("1-stratum " + std::to_string(e) + " has invalid 2-stratum germs");
        }
        auto okend = [&](int v) { return v == kCircle || (v >= 0 && v < nv); };
        if (!okend(ed.v0) || !okend(ed.v1)) bad("1-stratum " + std::to_string(e) + " has invalid end");
        bool circ = ed.v0 == kCircle;
        if (circ != (ed.v1 == kCircle)) bad("1-stratum " + std::to_string(e) + " mixes circle/non-circle ends");
        if (circ && ed.chi != 0) bad("circle 1-stratum " + std::to_string(e) + " must have chi 0");
        if (!circ && ed.chi != 1) bad("open-arc 1-stratum " + std::to_string(e) + " must have chi 1");
    }
    std::map<std::pair<int, int>, int> germ_count;
    for (int v = 0; v < nv; ++v) {
        const SVertex& vx = vertices[v];
        for (int k = 0; k < 3; ++k) {
            const SEdgeGerm& g = vx.germ[k];
            if (g.edge < 0 || g.edge >= ne || (g.end != 0 && g.end != 1)) {
                bad("0-stratum " + std::to_string(v) + " has invalid edge germ");
                continue;
            }
            germ_count[{g.edge, g.end}]++;
            const SEdge& ed = edges[g.edge];
            int vend = g.end == 0 ? ed.v0 : ed.v1;
            if (vend != v) bad("0-stratum " + std::to_string(v) + " germ edge does not end here");
            if (vx.face[k] < 0 || vx.face[k] >= nf) {
                bad("0-stratum " + std::to_string(v) + " has invalid face germ");
                continue;
            }
            // side consistency: f0 sits at position f0_position, f1 at the other
            int p0 = f0_position(g, k);
            int other = p0 == k ? (k + 2) % 3 : k;
            if (ed.f0 != vx.face[p0] || ed.f1 != vx.face[other]) {
                bad("0-stratum " + std::to_string(v) + " germ " + std::to_string(k) +
                    " disagrees with edge sides");
            }
        }
    }
    for (int e = 0; e < ne; ++e) {
        const SEdge& ed = edges[e];
        if (ed.v0 >= 0 && germ_count[{e, 0}] != 1) bad("1-stratum " + std::to_string(e) + " v0 germ count mismatch");
        if (ed.v1 >= 0 && germ_count[{e, 1}] != 1) bad("1-stratum " + std::to_string(e) + " v1 germ count mismatch");
    }
    return rep;
}

void SurfaceSkeleton::require_valid() const {
    auto rep = validate();
    if (!rep.empty()) {
        std::ostringstream os;
        os << "surface skeleton '" << id << "' invalid:";
        for (const auto& r : rep) os << "\n  " << r;
        throw validation_error(os.str());
    }
}

int SurfaceSkeleton::euler_alternating() const {
    int s = 0;
    for (const auto& f : faces) s += f.chi;
    for (const auto& e : edges) s -= e.chi;
    s += static_cast<int>(vertices.size());
    return s;
}

nlohmann::json SurfaceSkeleton::to_json() const {
    nlohmann::json strata = nlohmann::json::array();
    for (const auto& f : faces) strata.push_back({{"dim", 2}, {"chi", f.chi}});
    for (const auto& e : edges) {
        strata.push_back({{"dim", 1},
                          {"germ_targets", {e.f0, e.f1}},
                          {"ends", {e.v0, e.v1}},
                          {"chi", e.chi}});
    }
    for (const auto& v : vertices) {
        nlohmann::json germs = nlohmann::json::array();
        for (const auto& g : v.germ) germs.push_back({{"edge", g.edge}, {"end", g.end}});
        strata.push_back({{"dim", 0},
                          {"germs", germs},
                          {"germ_targets", {v.face[0], v.face[1], v.face[2]}}});
    }
    return {{"id", id}, {"strata", strata}};
}

SurfaceSkeleton SurfaceSkeleton::from_json(const nlohmann::json& doc) {
    SurfaceSkeleton ss;
    try {
        ss.id = doc.value("id", "");
        for (const auto& st : doc.at("strata")) {
            int dim = st.at("dim").get<int>();
            if (dim == 2) {
                ss.faces.push_back(SFace{st.at("chi").get<int>()});
            } else if (dim == 1) {
                SEdge e;
                e.f0 = st.at("germ_targets").at(0).get<int>();
                e.f1 = st.at("germ_targets").at(1).get<int>();
                e.v0 = st.at("ends").at(0).get<int>();
                e.v1 = st.at("ends").at(1).get<int>();
                e.chi = st.at("chi").get<int>();
                ss.edges.push_back(e);
            } else if (dim == 0) {
                SVertex v;
                for (int k = 0; k < 3; ++k) {
                    v.germ[k].edge = st.at("germs").at(k).at("edge").get<int>();
                    v.germ[k].end = st.at("germs").at(k).at("end").get<int>();
                    v.face[k] = st.at("germ_targets").at(k).get<int>();
                }
                ss.vertices.push_back(v);
            } else {
                throw validation_error("surface stratum dim out of range");
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        throw validation_error(std::string("surface skeleton schema violation: ") + ex.what());
    }
    return ss;
}

// --- local orders ---------------------------------------------------------------

namespace {

bool svertex_ok(const SurfaceSkeleton& ss, const SVertex& vx, const SurfaceOrder& bits) {
    // germ k orders face positions k (if it holds f0 there) vs k-1
    bool lt[3][3] = {};
    for (int k = 0; k < 3; ++k) {
        const SEdgeGerm& g = vx.germ[k];
        int p0 = f0_position(g, k);
        int p1 = p0 == k ? (k + 2) % 3 : k;
        if (bits[g.edge] == 0) lt[p0][p1] = true;
        else lt[p1][p0] = true;
    }
    bool a = lt[0][1], b = lt[1][2], c = lt[2][0];
    return !((a && b && c) || (!a && !b && !c));
}

}  // namespace

bool surface_order_admissible(const SurfaceSkeleton& ss, const SurfaceOrder& bits) {
    if (bits.size() != ss.edges.size()) return false;
    for (const auto& vx : ss.vertices)
        if (!svertex_ok(ss, vx, bits)) return false;
    return true;
}

std::vector<SurfaceOrder> solve_surface_order(const SurfaceSkeleton& ss, const SolveOptions& opts) {
    int ne = static_cast<int>(ss.edges.size());
    std::vector<std::vector<int>> vert_by_edge(ne);
    for (int v = 0; v < static_cast<int>(ss.vertices.size()); ++v) {
        int hi = 0;
        for (int k = 0; k < 3; ++k) hi = std::max(hi, ss.vertices[v].germ[k].edge);
        if (ne > 0) vert_by_edge[hi].push_back(v);
    }
    std::vector<SurfaceOrder> out;
    SurfaceOrder bits(ne, 0);
    std::function<bool(int)> dfs = [&](int e) -> bool {
        if (e == ne) {
            out.push_back(bits);
            return opts.first_only || static_cast<int>(out.size()) >= opts.cap;
        }
        for (uint8_t b = 0; b < 2; ++b) {
            bits[e] = b;
            bool ok = true;
            for (int v : vert_by_edge[e])
                if (!svertex_ok(ss, ss.vertices[v], bits)) { ok = false; break; }
            if (ok && dfs(e + 1)) return true;
        }
        bits[e] = 0;
        return false;
    };
    dfs(0);
    return out;
}

// --- isomorphism ------------------------------------------------------------------

namespace {

struct IsoState {
    std::vector<int> vmap, emap, fmap;  // a-index -> b-index, -1 unset
    std::vector<int> edir;              // 1 same direction, -1 reversed
    std::vector<char> vused, eused, fused;
};

bool map_face(IsoState& st, int fa, int fb, const SurfaceSkeleton& A, const SurfaceSkeleton& B) {
    if (st.fmap[fa] >= 0) return st.fmap[fa] == fb;
    if (st.fused[fb]) return false;
    if (A.faces[fa].chi != B.faces[fb].chi) return false;
    st.fmap[fa] = fb;
    st.fused[fb] = 1;
    return true;
}

bool map_edge(IsoState& st, int ea, int eb, int dir, const SurfaceSkeleton& A, const SurfaceSkeleton& B) {
    if (st.emap[ea] >= 0) return st.emap[ea] == eb && st.edir[ea] == dir;
    if (st.eused[eb]) return false;
    const SEdge& x = A.edges[ea];
    const SEdge& y = B.edges[eb];
    if (x.chi != y.chi) return false;
    int yf0 = dir == 1 ? y.f0 : y.f1;
    int yf1 = dir == 1 ? y.f1 : y.f0;
    if (!map_face(st, x.f0, yf0, A, B)) return false;
    if (!map_face(st, x.f1, yf1, A, B)) return false;
    st.emap[ea] = eb;
    st.edir[ea] = dir;
    st.eused[eb] = 1;
    return true;
}

}  // namespace

bool surface_isomorphic(const SurfaceSkeleton& a, const SurfaceSkeleton& b) {
    if (a.faces.size() != b.faces.size() || a.edges.size() != b.edges.size() ||
        a.vertices.size() != b.vertices.size())
        return false;
    int nv = static_cast<int>(a.vertices.size());
    int ne = static_cast<int>(a.edges.size());
    int nf = static_cast<int>(a.faces.size());

    auto try_from = [&](int w0, int r0) -> bool {
        IsoState st;
        st.vmap.assign(nv, -1);
        st.emap.assign(ne, -1);
        st.fmap.assign(nf, -1);
        st.edir.assign(ne, 0);
        st.vused.assign(nv, 0);
        st.eused.assign(ne, 0);
        st.fused.assign(nf, 0);
        struct Item { int va, vb, rot; };
        std::vector<Item> queue;
        auto push_vertex = [&](int va, int vb, int rot) -> bool {
            if (st.vmap[va] >= 0) return st.vmap[va] == vb;  // rotation checked via germs
            if (st.vused[vb]) return false;
            st.vmap[va] = vb;
            st.vused[vb] = 1;
            queue.push_back({va, vb, rot});
            return true;
        };
        if (nv > 0 && !push_vertex(0, w0, r0)) return false;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            auto [va, vb, rot] = queue[qi];
            const SVertex& X = a.vertices[va];
            const SVertex& Y = b.vertices[vb];
            for (int k = 0; k < 3; ++k) {
                int k2 = (k + rot) % 3;
                if (!map_face(st, X.face[k], Y.face[k2], a, b)) return false;
                const SEdgeGerm& g = X.germ[k];
                const SEdgeGerm& h = Y.germ[k2];
                int dir = g.end == h.end ? 1 : -1;
                if (!map_edge(st, g.edge, h.edge, dir, a, b)) return false;
                // follow to the other end
                const SEdge& ea = a.edges[g.edge];
                const SEdge& eb = b.edges[h.edge];
                int oend = 1 - g.end;
                int ova = oend == 0 ? ea.v0 : ea.v1;
                int oend_b = dir == 1 ? oend : 1 - oend;
                int ovb = oend_b == 0 ? eb.v0 : eb.v1;
                if (ova < 0 || ovb < 0) {
                    if (ova != ovb) return false;
                    continue;
                }
                // germ slot of the other end
                auto find_slot = [](const SurfaceSkeleton& S, int v, int e, int end, int skip_v,
                                    int skip_k) {
                    const SVertex& vx = S.vertices[v];
                    for (int t = 0; t < 3; ++t) {
                        if (v == skip_v && t == skip_k) continue;
                        if (vx.germ[t].edge == e && vx.germ[t].end == end) return t;
                    }
                    return -1;
                };
                int sa = find_slot(a, ova, g.edge, oend, va == ova && oend == g.end ? va : -1, k);
                int sb = find_slot(b, ovb, h.edge, oend_b, vb == ovb && oend_b == h.end ? vb : -1, k2);
                if (sa < 0 || sb < 0) return false;
                int rot2 = ((sb - sa) % 3 + 3) % 3;
                if (st.vmap[ova] >= 0) {
                    if (st.vmap[ova] != ovb) return false;
                } else if (!push_vertex(ova, ovb, rot2)) {
                    return false;
                }
            }
        }
        if (nv > 0 && static_cast<int>(queue.size()) != nv) return false;  // disconnected
        // leftover circle edges: match by mapped face pair (greedy; circles with
        // identical side pairs are interchangeable)
        std::vector<int> freeb;
        for (int e = 0; e < ne; ++e)
            if (!st.eused[e]) freeb.push_back(e);
        for (int e = 0; e < ne; ++e) {
            if (st.emap[e] >= 0) continue;
            bool done = false;
            for (int& cand : freeb) {
                if (cand < 0) continue;
                IsoState save = st;
                if (map_edge(st, e, cand, 1, a, b) || (st = save, map_edge(st, e, cand, -1, a, b))) {
                    cand = -1;
                    done = true;
                    break;
                }
                st = save;
            }
            if (!done) return false;
        }
        // leftover faces by chi multiset
        std::multiset<int> ca, cb;
        for (int f = 0; f < nf; ++f) {
            if (st.fmap[f] < 0) ca.insert(a.faces[f].chi);
        }
        for (int f = 0; f < nf; ++f) {
            if (!st.fused[f]) cb.insert(b.faces[f].chi);
        }
        return ca == cb;
    };

    if (nv == 0) return try_from(-1, 0);
    for (int w0 = 0; w0 < nv; ++w0)
        for (int r0 = 0; r0 < 3; ++r0)
            if (try_from(w0, r0)) return true;
    return false;
}

// --- boundary restriction ----------------------------------------------------------

namespace {

struct BoundaryBuild {
    SurfaceSkeleton ss;
    std::vector<int> edge_src;       // surface edge -> 3d face id
    std::vector<uint8_t> edge_swap;  // orientation fix swapped f0/f1
};

BoundaryBuild build_boundary(const Skeleton& sk, Boundary which) {
    BoundaryBuild bb;
    bb.ss.id = sk.id + (which == Boundary::in ? "|in" : "|out");
    int code = which == Boundary::in ? kBoundaryIn : kBoundaryOut;
    std::vector<int> face_of_body(sk.bodies.size(), -1);
    for (int b = 0; b < static_cast<int>(sk.bodies.size()); ++b) {
        if (sk.bodies[b].bdry == which) {
            face_of_body[b] = static_cast<int>(bb.ss.faces.size());
            bb.ss.faces.push_back(SFace{sk.bodies[b].boundary_chi});
        }
    }
    std::vector<int> edge_of_face(sk.faces.size(), -1);
    for (int f = 0; f < static_cast<int>(sk.faces.size()); ++f) {
        if (sk.faces[f].bdry != which) continue;
        const Face& fc = sk.faces[f];
        if (face_of_body[fc.s0] < 0 || face_of_body[fc.s1] < 0) {
            throw validation_error("boundary 2-stratum borders a non-boundary 3-stratum");
        }
        if (fc.boundary_chi < 0 || fc.boundary_chi > 1) {
            throw validation_error("boundary 2-stratum must meet the boundary in one arc or circle");
        }
        SEdge e;
        e.f0 = face_of_body[fc.s0];
        e.f1 = face_of_body[fc.s1];
        e.chi = fc.boundary_chi;
        edge_of_face[f] = static_cast<int>(bb.ss.edges.size());
        bb.ss.edges.push_back(e);
        bb.edge_src.push_back(f);
        bb.edge_swap.push_back(0);
    }
    // vertices from boundary ends of 1-strata
    struct PendingGerm { int vertex, slot; };
    std::map<int, std::vector<PendingGerm>> touches;  // surface edge -> vertex slots
    for (int e3 = 0; e3 < static_cast<int>(sk.edges.size()); ++e3) {
        const Edge& ed = sk.edges[e3];
        for (int end : {ed.end0, ed.end1}) {
            if (end != code) continue;
            SVertex vx;
            // counterclockwise germ order as seen from outside the manifold:
            // walls in cyclic order for the out-boundary, reversed for in
            std::array<int, 3> wall_order =
                which == Boundary::out ? std::array<int, 3>{0, 1, 2} : std::array<int, 3>{0, 2, 1};
            for (int k = 0; k < 3; ++k) {
                int w = wall_order[k];
                int se = edge_of_face[ed.wall[w].face];
                if (se < 0) throw validation_error("boundary 1-stratum wall face lacks boundary marker");
                vx.germ[k].edge = se;
                // face germ between wall_order[k] and wall_order[k+1]
                int wn = wall_order[(k + 1) % 3];
                // sector s sits between walls s-1 and s (cyclically)
                int sect = -1;
                for (int s = 0; s < 3; ++s) {
                    int prev = (s + 2) % 3;
                    if ((prev == w && s == wn) || (prev == wn && s == w)) sect = s;
                }
                if (sect < 0) throw validation_error("boundary vertex sector resolution failed");
                int sf = face_of_body[ed.sector[sect]];
                if (sf < 0) throw validation_error("boundary 1-stratum sector lacks boundary marker");
                vx.face[k] = sf;
            }
            int vid = static_cast<int>(bb.ss.vertices.size());
            bb.ss.vertices.push_back(vx);
            for (int k = 0; k < 3; ++k) touches[vx.germ[k].edge].push_back({vid, k});
        }
    }
    // assign edge ends and orient edges so side conventions hold
    for (int se = 0; se < static_cast<int>(bb.ss.edges.size()); ++se) {
        SEdge& e = bb.ss.edges[se];
        auto it = touches.find(se);
        int n = it == touches.end() ? 0 : static_cast<int>(it->second.size());
        if (e.chi == 0) {
            if (n != 0) throw validation_error("circle boundary 1-stratum with endpoints");
            continue;
        }
        if (n != 2) throw validation_error("arc boundary 1-stratum must have two endpoints");
        auto fits = [&](const PendingGerm& g0, const PendingGerm& g1, bool swapped) -> bool {
            // g0 as v0 (end 0), g1 as v1 (end 1); check side rule at both
            int f0 = swapped ? e.f1 : e.f0;
            int f1 = swapped ? e.f0 : e.f1;
            const SVertex& a = bb.ss.vertices[g0.vertex];
            const SVertex& b = bb.ss.vertices[g1.vertex];
            SEdgeGerm ga{se, 0}, gb{se, 1};
            int pa = f0_position(ga, g0.slot);
            int oa = pa == g0.slot ? (g0.slot + 2) % 3 : g0.slot;
            int pb = f0_position(gb, g1.slot);
            int ob = pb == g1.slot ? (g1.slot + 2) % 3 : g1.slot;
            return a.face[pa] == f0 && a.face[oa] == f1 && b.face[pb] == f0 && b.face[ob] == f1;
        };
        const auto& g0 = it->second[0];
        const auto& g1 = it->second[1];
        struct Choice { int i0, i1; bool swap; };
        bool placed = false;
        for (const Choice& c : {Choice{0, 1, false}, Choice{1, 0, false}, Choice{0, 1, true}, Choice{1, 0, true}}) {
            const auto& a = c.i0 == 0 ? g0 : g1;
            const auto& b = c.i1 == 0 ? g0 : g1;
            if (fits(a, b, c.swap)) {
                if (c.swap) {
                    std::swap(e.f0, e.f1);
                    bb.edge_swap[se] = 1;
                }
                e.v0 = a.vertex;
                e.v1 = b.vertex;
                bb.ss.vertices[a.vertex].germ[a.slot] = {se, 0};
                bb.ss.vertices[b.vertex].germ[b.slot] = {se, 1};
                placed = true;
                break;
            }
        }
        if (!placed) throw validation_error("boundary 1-stratum sides are inconsistent");
    }
    bb.ss.require_valid();
    return bb;
}

}  // namespace

SurfaceSkeleton boundary_skeleton(const Skeleton& sk, Boundary which) {
    return build_boundary(sk, which).ss;
}

SurfaceOrder restrict_order(const Skeleton& sk, const LocalOrder& bits, Boundary which) {
    BoundaryBuild bb = build_boundary(sk, which);
    SurfaceOrder out(bb.ss.edges.size(), 0);
    for (size_t se = 0; se < bb.ss.edges.size(); ++se) {
        uint8_t b = bits[bb.edge_src[se]];
        out[se] = bb.edge_swap[se] ? static_cast<uint8_t>(1 - b) : b;
    }
    return out;
}

// --- library -----------------------------------------------------------------------

SurfaceSkeleton library_surface(const std::string& name) {
    SurfaceSkeleton ss;
    ss.id = name;
    if (name == "s2_circle") {
        ss.faces = {SFace{1}, SFace{1}};
        SEdge c;
        c.f0 = 0;
        c.f1 = 1;
        c.chi = 0;
        ss.edges = {c};
    } else if (name == "s2_theta") {
        ss.faces = {SFace{1}, SFace{1}, SFace{1}};
        for (int k = 0; k < 3; ++k) {
            SEdge e;
            e.f0 = k;
            e.f1 = (k + 2) % 3;
            e.v0 = 0;
            e.v1 = 1;
            ss.edges.push_back(e);
        }
        SVertex X;
        X.germ = {SEdgeGerm{0, 0}, SEdgeGerm{1, 0}, SEdgeGerm{2, 0}};
        X.face = {0, 1, 2};
        SVertex Y;
        Y.germ = {SEdgeGerm{0, 1}, SEdgeGerm{2, 1}, SEdgeGerm{1, 1}};
        Y.face = {2, 1, 0};
        ss.vertices = {X, Y};
    } else if (name == "t2_theta") {
        ss.faces = {SFace{1}};
        SEdge a, b, c;
        a.f0 = a.f1 = b.f0 = b.f1 = c.f0 = c.f1 = 0;
        a.v0 = 0; a.v1 = 1;
        b.v0 = 1; b.v1 = 0;
        c.v0 = 0; c.v1 = 1;
        ss.edges = {a, b, c};
        SVertex X;
        X.germ = {SEdgeGerm{0, 0}, SEdgeGerm{2, 0}, SEdgeGerm{1, 1}};
        X.face = {0, 0, 0};
        SVertex Y;
        Y.germ = {SEdgeGerm{1, 0}, SEdgeGerm{0, 1}, SEdgeGerm{2, 1}};
        Y.face = {0, 0, 0};
        ss.vertices = {X, Y};
    } else {
        throw validation_error("unknown library surface skeleton: " + name);
    }
    ss.require_valid();
    return ss;
}

}  // namespace otq
