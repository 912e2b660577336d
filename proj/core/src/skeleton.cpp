#include "otq/skeleton.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace otq {

namespace {

bool valid_end(int e, int nverts) {
    return (e >= 0 && e < nverts) || e == kCircle || e == kBoundaryIn || e == kBoundaryOut;
}

}  // namespace

std::vector<std::string> Skeleton::validate() const {
    std::vector<std::string> report;
    auto bad = [&](const std::string& msg) { report.push_back(msg); };
    int nb = static_cast<int>(bodies.size());
    int nf = static_cast<int>(faces.size());
    int ne = static_cast<int>(edges.size());
    int nv = static_cast<int>(vertices.size());

    for (int b = 0; b < nb; ++b) {
        if (!bodies[b].is_ball_certified) bad("3-stratum " + std::to_string(b) + " is not ball-certified");
        if (bodies[b].chi != 1) bad("3-stratum " + std::to_string(b) + " has chi != 1");
    }
    for (int f = 0; f < nf; ++f) {
        const Face& fc = faces[f];
        if (fc.s0 < 0 || fc.s0 >= nb || fc.s1 < 0 || fc.s1 >= nb) {
            bad("2-stratum " + std::to_string(f) + " has invalid 3-stratum germs");
            continue;
        }
        if (fc.chi > 2) bad("2-stratum " + std::to_string(f) + " has chi > 2");
    }
    for (int e = 0; e < ne; ++e) {
        const Edge& ed = edges[e];
        for (int k = 0; k < 3; ++k) {
            if (ed.sector[k] < 0 || ed.sector[k] >= nb) {
                bad("1-stratum " + std::to_string(e) + " has invalid sector");
                continue;
            }
            const Wall& w = ed.wall[k];
            if (w.face < 0 || w.face >= nf) {
                bad("1-stratum " + std::to_string(e) + " has invalid wall face");
                continue;
            }
            int lo = ed.sector[k], hi = ed.sector[(k + 1) % 3];
            const Face& fc = faces[w.face];
            int a = w.flip ? hi : lo, b = w.flip ? lo : hi;
            if (fc.s0 != a || fc.s1 != b) {
                bad("1-stratum " + std::to_string(e) + " wall " + std::to_string(k) +
                    " disagrees with face germ pair");
            }
        }
        if (!valid_end(ed.end0, nv) || !valid_end(ed.end1, nv)) {
            bad("1-stratum " + std::to_string(e) + " has invalid end");
        }
        bool circle = ed.end0 == kCircle;
        if (circle != (ed.end1 == kCircle)) {
            bad("1-stratum " + std::to_string(e) + " mixes circle and non-circle ends");
        }
        if (circle && ed.chi != 0) bad("circle 1-stratum " + std::to_string(e) + " must have chi 0");
        if (!circle && ed.chi != 1) bad("open-arc 1-stratum " + std::to_string(e) + " must have chi 1");
        int bends = (ed.end0 == kBoundaryIn || ed.end0 == kBoundaryOut ? 1 : 0) +
                    (ed.end1 == kBoundaryIn || ed.end1 == kBoundaryOut ? 1 : 0);
        if (ed.boundary_chi != bends) {
            bad("1-stratum " + std::to_string(e) + " boundary_chi disagrees with boundary end count");
        }
        if (bends > 0 && ed.bdry == Boundary::none) {
            bad("1-stratum " + std::to_string(e) + " has boundary ends but no boundary marker");
        }
    }
    // vertex structure
    for (int v = 0; v < nv; ++v) {
        const Vertex& vx = vertices[v];
        bool sectors_ok = true;
        for (int i = 0; i < 4; ++i) {
            if (vx.sector[i] < 0 || vx.sector[i] >= nb) {
                bad("0-stratum " + std::to_string(v) + " has invalid sector");
                sectors_ok = false;
            }
        }
        if (!sectors_ok) continue;
        for (int p = 0; p < 6; ++p) {
            const Wall& w = vx.wall[p];
            if (w.face < 0 || w.face >= nf) {
                bad("0-stratum " + std::to_string(v) + " has invalid wall face");
                continue;
            }
            auto [i, j] = kPairs[p];
            const Face& fc = faces[w.face];
            int a = vx.sector[w.flip ? j : i], b = vx.sector[w.flip ? i : j];
            if (fc.s0 != a || fc.s1 != b) {
                bad("0-stratum " + std::to_string(v) + " wall " + std::to_string(p) +
                    " disagrees with face germ pair");
            }
        }
        std::set<std::set<int>> triples;
        for (int g = 0; g < 4; ++g) {
            const VertexGerm& gm = vx.germ[g];
            if (gm.edge < 0 || gm.edge >= ne) {
                bad("0-stratum " + std::to_string(v) + " has invalid edge germ");
                continue;
            }
            const Edge& ed = edges[gm.edge];
            std::set<int> positions(gm.slot_pos.begin(), gm.slot_pos.end());
            if (positions.size() != 3 || *positions.begin() < 0 || *positions.rbegin() > 3) {
                bad("0-stratum " + std::to_string(v) + " germ " + std::to_string(g) +
                    " has invalid position map");
                continue;
            }
            triples.insert(positions);
            int endv = -1;
            // germ must correspond to an end of the edge at this vertex
            if (std::count(gm.slot_pos.begin(), gm.slot_pos.end(), -1) == 0) {
                bool is0 = ed.end0 == v, is1 = ed.end1 == v;
                if (!is0 && !is1) {
                    bad("0-stratum " + std::to_string(v) + " germ edge does not end here");
                }
            }
            (void)endv;
            for (int t = 0; t < 3; ++t) {
                if (ed.sector[t] != vx.sector[gm.slot_pos[t]]) {
                    bad("0-stratum " + std::to_string(v) + " germ " + std::to_string(g) +
                        " sector mismatch at slot " + std::to_string(t));
                }
            }
            for (int k = 0; k < 3; ++k) {
                int pi = gm.slot_pos[k], pj = gm.slot_pos[(k + 1) % 3];
                int p = pair_index(pi, pj);
                if (vx.wall[p].face != ed.wall[k].face) {
                    bad("0-stratum " + std::to_string(v) + " germ " + std::to_string(g) +
                        " wall face mismatch at slot " + std::to_string(k));
                    continue;
                }
                // germ-level flip consistency: both descriptions must send the
                // face's side-0 germ to the same vertex position
                int slot_s0 = ed.wall[k].flip ? (k + 1) % 3 : k;
                int pos_e = gm.slot_pos[slot_s0];
                auto [i, j] = kPairs[p];
                int pos_v = vx.wall[p].flip ? j : i;
                if (pos_e != pos_v) {
                    bad("0-stratum " + std::to_string(v) + " germ " + std::to_string(g) +
                        " wall flip mismatch at slot " + std::to_string(k));
                }
            }
        }
        if (triples.size() != 4) {
            bad("0-stratum " + std::to_string(v) +
                " edge germs must realize the four 3-element position subsets");
        }
    }
    // end counts: edge e must appear as a germ of vertex v exactly as often as v is an end of e
    std::map<std::pair<int, int>, int> germ_count;
    for (int v = 0; v < nv; ++v)
        for (int g = 0; g < 4; ++g) germ_count[{vertices[v].germ[g].edge, v}]++;
    for (int e = 0; e < ne; ++e) {
        std::map<int, int> want;
        if (edges[e].end0 >= 0) want[edges[e].end0]++;
        if (edges[e].end1 >= 0) want[edges[e].end1]++;
        for (auto& [v, c] : want) {
            if (germ_count[{e, v}] != c) {
                bad("1-stratum " + std::to_string(e) + " end count mismatch at 0-stratum " +
                    std::to_string(v));
            }
        }
    }
    return report;
}

void Skeleton::require_valid() const {
    auto rep = validate();
    if (!rep.empty()) {
        std::ostringstream os;
        os << "skeleton '" << id << "' invalid:";
        for (const auto& r : rep) os << "\n  " << r;
        throw validation_error(os.str());
    }
}

int Skeleton::euler_alternating() const {
    int s = 0;
    for (const auto& b : bodies) s -= b.chi;
    for (const auto& f : faces) s += f.chi;
    for (const auto& e : edges) s -= e.chi;
    s += static_cast<int>(vertices.size());
    return s;
}

// --- orientation / local order ----------------------------------------------

namespace {

// relation at an edge: returns true if slot a precedes slot b (a,b consecutive)
bool edge_lt(const Edge& ed, const LocalOrder& bits, int k) {
    // whether sector slot k precedes slot k+1
    const Wall& w = ed.wall[k];
    bool k_is_s0 = !w.flip;
    bool s0_first = bits[w.face] == 0;
    return k_is_s0 == s0_first;
}

bool edge_ok(const Edge& ed, const LocalOrder& bits) {
    bool a = edge_lt(ed, bits, 0);  // 0 < 1
    bool b = edge_lt(ed, bits, 1);  // 1 < 2
    bool c = edge_lt(ed, bits, 2);  // 2 < 0
    // cyclic iff all three hold or none holds
    return !((a && b && c) || (!a && !b && !c));
}

// whether position i precedes position j at a vertex (p = pair_index(i,j), i<j)
bool vertex_lt(const Vertex& vx, const LocalOrder& bits, int p) {
    const Wall& w = vx.wall[p];
    bool i_is_s0 = !w.flip;
    bool s0_first = bits[w.face] == 0;
    return i_is_s0 == s0_first;  // true: lower pair position precedes
}

bool vertex_ok(const Vertex& vx, const LocalOrder& bits) {
    bool lt[4][4] = {};
    for (int p = 0; p < 6; ++p) {
        auto [i, j] = kPairs[p];
        if (vertex_lt(vx, bits, p)) lt[i][j] = true;
        else lt[j][i] = true;
    }
    int wins[4] = {};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (lt[i][j]) wins[i]++;
    int seen = 0;
    for (int i = 0; i < 4; ++i) seen |= 1 << wins[i];
    return seen == 0b1111;  // transitive tournament has win counts 0,1,2,3
}

}  // namespace

bool orientation_admissible(const Skeleton& sk, const LocalOrder& bits) {
    if (bits.size() != sk.faces.size()) return false;
    for (const auto& ed : sk.edges) {
        if (ed.end0 == kCircle && ed.monodromy != 0) return false;
        if (!edge_ok(ed, bits)) return false;
    }
    for (const auto& vx : sk.vertices) {
        if (!vertex_ok(vx, bits)) return false;
    }
    return true;
}

std::vector<LocalOrder> solve_local_order(const Skeleton& sk, const SolveOptions& opts) {
    int nf = static_cast<int>(sk.faces.size());
    std::vector<LocalOrder> out;
    for (const auto& ed : sk.edges) {
        if (ed.end0 == kCircle && ed.monodromy != 0) return out;
    }
    // constraints indexed by the highest face id they mention
    std::vector<std::vector<int>> edge_by_face(nf), vert_by_face(nf);
    for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e) {
        int hi = 0;
        for (int k = 0; k < 3; ++k) hi = std::max(hi, sk.edges[e].wall[k].face);
        if (nf > 0) edge_by_face[hi].push_back(e);
    }
    for (int v = 0; v < static_cast<int>(sk.vertices.size()); ++v) {
        int hi = 0;
        for (int p = 0; p < 6; ++p) hi = std::max(hi, sk.vertices[v].wall[p].face);
        if (nf > 0) vert_by_face[hi].push_back(v);
    }
    LocalOrder bits(nf, 0);
    std::function<bool(int)> dfs = [&](int f) -> bool {  // returns true when capped
        if (f == nf) {
            out.push_back(bits);
            if (opts.first_only || static_cast<int>(out.size()) >= opts.cap) return true;
            return false;
        }
        for (uint8_t b = 0; b < 2; ++b) {
            bits[f] = b;
            bool ok = true;
            for (int e : edge_by_face[f])
                if (!edge_ok(sk.edges[e], bits)) { ok = false; break; }
            if (ok)
                for (int v : vert_by_face[f])
                    if (!vertex_ok(sk.vertices[v], bits)) { ok = false; break; }
            if (ok && dfs(f + 1)) return true;
        }
        bits[f] = 0;
        return false;
    };
    dfs(0);
    return out;
}

OrientedSkeleton orient_from_order(const Skeleton& sk, const LocalOrder& order) {
    if (!orientation_admissible(sk, order)) {
        throw validation_error("order is not compatible with the skeleton");
    }
    return OrientedSkeleton{sk, order};
}

std::array<int, 3> edge_ranks(const Skeleton& sk, const LocalOrder& bits, int e) {
    const Edge& ed = sk.edges[e];
    bool lt01 = edge_lt(ed, bits, 0);
    bool lt12 = edge_lt(ed, bits, 1);
    bool lt20 = edge_lt(ed, bits, 2);
    bool lt[3][3] = {};
    lt[0][1] = lt01; lt[1][0] = !lt01;
    lt[1][2] = lt12; lt[2][1] = !lt12;
    lt[2][0] = lt20; lt[0][2] = !lt20;
    std::array<int, 3> rank{};
    for (int i = 0; i < 3; ++i) {
        int losses = 0;
        for (int j = 0; j < 3; ++j)
            if (j != i && lt[j][i]) losses++;
        rank[i] = losses;
    }
    return rank;
}

std::array<int, 4> vertex_ranks(const Skeleton& sk, const LocalOrder& bits, int v) {
    const Vertex& vx = sk.vertices[v];
    bool lt[4][4] = {};
    for (int p = 0; p < 6; ++p) {
        auto [i, j] = kPairs[p];
        if (vertex_lt(vx, bits, p)) lt[i][j] = true;
        else lt[j][i] = true;
    }
    std::array<int, 4> rank{};
    for (int i = 0; i < 4; ++i) {
        int losses = 0;
        for (int j = 0; j < 4; ++j)
            if (j != i && lt[j][i]) losses++;
        rank[i] = losses;
    }
    return rank;
}

int vertex_sign(const Skeleton& sk, const LocalOrder& bits, int v) {
    auto rank = vertex_ranks(sk, bits, v);
    int parity = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (rank[i] > rank[j]) parity ^= 1;
    return parity ? -1 : +1;
}

// --- face boundary tracing ----------------------------------------------------

std::vector<std::vector<BoundaryItem>> trace_face_boundary(const Skeleton& sk, int f) {
    // collect edge runs (edge, wall slot) and vertex corners (vertex, pair)
    struct RunRef { int edge, slot; };
    std::map<std::pair<int, int>, bool> run_used;
    std::vector<RunRef> runs;
    for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e)
        for (int k = 0; k < 3; ++k)
            if (sk.edges[e].wall[k].face == f) {
                runs.push_back({e, k});
                run_used[{e, k}] = false;
            }
    // corner lookup: (vertex, pair) -> list of adjacent runs (as edge germ refs)
    struct GermRef { int edge, slot, end; };
    std::map<std::pair<int, int>, std::vector<GermRef>> corner_adj;
    for (int v = 0; v < static_cast<int>(sk.vertices.size()); ++v) {
        const Vertex& vx = sk.vertices[v];
        for (int g = 0; g < 4; ++g) {
            const VertexGerm& gm = vx.germ[g];
            const Edge& ed = sk.edges[gm.edge];
            int end = (ed.end0 == v) ? 0 : 1;
            if (ed.end0 == v && ed.end1 == v) {
                // loop: disambiguate the two germ entries by first/second occurrence
                int before = 0;
                for (int g2 = 0; g2 < g; ++g2)
                    if (vx.germ[g2].edge == gm.edge) before++;
                end = before;
            }
            for (int k = 0; k < 3; ++k) {
                if (ed.wall[k].face != f) continue;
                int p = pair_index(gm.slot_pos[k], gm.slot_pos[(k + 1) % 3]);
                if (vx.wall[p].face != f) continue;
                corner_adj[{v, p}].push_back({gm.edge, k, end});
            }
        }
    }
    std::vector<std::vector<BoundaryItem>> cycles;
    for (const auto& start : runs) {
        if (run_used[{start.edge, start.slot}]) continue;
        const Edge& ed0 = sk.edges[start.edge];
        if (ed0.end0 == kCircle) {
            run_used[{start.edge, start.slot}] = true;
            cycles.push_back({BoundaryItem{BoundaryItem::EdgeRun, start.edge, start.slot, -1}});
            continue;
        }
        if (ed0.end0 < 0 || ed0.end1 < 0) {
            throw validation_error("face boundary tracing requires interior 1-strata");
        }
        std::vector<BoundaryItem> cyc;
        int cur_e = start.edge, cur_k = start.slot;
        int exit_end = 1;  // traverse the first run from end0 towards end1
        while (true) {
            if (run_used[{cur_e, cur_k}]) {
                throw validation_error("face boundary tracing revisited a run (inconsistent flags)");
            }
            run_used[{cur_e, cur_k}] = true;
            cyc.push_back({BoundaryItem::EdgeRun, cur_e, cur_k, exit_end});
            const Edge& ed = sk.edges[cur_e];
            int v = exit_end == 0 ? ed.end0 : ed.end1;
            if (v < 0) throw validation_error("face boundary tracing hit a boundary end");
            // find the corner at v matching this run
            const Vertex& vx = sk.vertices[v];
            int pair = -1;
            for (int g = 0; g < 4; ++g) {
                const VertexGerm& gm = vx.germ[g];
                if (gm.edge != cur_e) continue;
                int end = (ed.end0 == v && ed.end1 == v)
                              ? ([&] {
                                    int before = 0;
                                    for (int g2 = 0; g2 < g; ++g2)
                                        if (vx.germ[g2].edge == cur_e) before++;
                                    return before;
                                }())
                              : (ed.end0 == v ? 0 : 1);
                if (end != exit_end) continue;
                pair = pair_index(gm.slot_pos[cur_k], gm.slot_pos[(cur_k + 1) % 3]);
                break;
            }
            if (pair < 0) throw validation_error("face boundary tracing: missing germ");
            cyc.push_back({BoundaryItem::VertexCorner, v, pair});
            // next run: the other germ at this corner
            auto& adj = corner_adj[{v, pair}];
            if (adj.size() != 2) throw validation_error("face corner does not join two runs");
            GermRef next{};
            bool found = false;
            for (const auto& gr : adj) {
                if (gr.edge == cur_e && gr.slot == cur_k && gr.end == exit_end) continue;
                next = gr;
                found = true;
            }
            if (!found) throw validation_error("face boundary tracing: corner mismatch");
            cur_e = next.edge;
            cur_k = next.slot;
            exit_end = 1 - next.end;  // enter at next.end, exit at the other end
            if (cur_e == start.edge && cur_k == start.slot && run_used[{cur_e, cur_k}]) break;
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

// --- JSON ---------------------------------------------------------------------

namespace {

nlohmann::json wall_json(const Wall& w) { return {{"face", w.face}, {"flip", w.flip}}; }
Wall wall_from(const nlohmann::json& j) { return Wall{j.at("face").get<int>(), j.at("flip").get<bool>()}; }

int bdry_code(Boundary b) { return static_cast<int>(b); }
Boundary bdry_from(int c) { return static_cast<Boundary>(c); }

}  // namespace

nlohmann::json Skeleton::to_json() const {
    nlohmann::json strata = nlohmann::json::array();
    for (const auto& b : bodies) {
        strata.push_back({{"dim", 3},
                          {"chi", b.chi},
                          {"boundary_chi", b.boundary_chi},
                          {"ball", b.is_ball_certified},
                          {"bdry", bdry_code(b.bdry)}});
    }
    for (const auto& f : faces) {
        strata.push_back({{"dim", 2},
                          {"germ_targets", {f.s0, f.s1}},
                          {"chi", f.chi},
                          {"boundary_chi", f.boundary_chi},
                          {"bdry", bdry_code(f.bdry)}});
    }
    for (const auto& e : edges) {
        nlohmann::json walls = nlohmann::json::array();
        for (const auto& w : e.wall) walls.push_back(wall_json(w));
        strata.push_back({{"dim", 1},
                          {"germ_targets", {e.sector[0], e.sector[1], e.sector[2]}},
                          {"walls", walls},
                          {"ends", {e.end0, e.end1}},
                          {"chi", e.chi},
                          {"boundary_chi", e.boundary_chi},
                          {"bdry", bdry_code(e.bdry)},
                          {"monodromy", e.monodromy}});
    }
    for (const auto& v : vertices) {
        nlohmann::json walls = nlohmann::json::array();
        for (const auto& w : v.wall) walls.push_back(wall_json(w));
        nlohmann::json germs = nlohmann::json::array();
        for (const auto& g : v.germ) {
            germs.push_back({{"edge", g.edge}, {"slot_pos", {g.slot_pos[0], g.slot_pos[1], g.slot_pos[2]}}});
        }
        strata.push_back({{"dim", 0},
                          {"germ_targets", {v.sector[0], v.sector[1], v.sector[2], v.sector[3]}},
                          {"walls", walls},
                          {"germs", germs},
                          {"chi", 1},
                          {"boundary_chi", 0}});
    }
    return {{"id", id}, {"strata", strata}};
}

Skeleton Skeleton::from_json(const nlohmann::json& doc) {
    Skeleton sk;
    try {
        sk.id = doc.value("id", "");
        for (const auto& st : doc.at("strata")) {
            int dim = st.at("dim").get<int>();
            if (dim == 3) {
                Body b;
                b.chi = st.at("chi").get<int>();
                b.boundary_chi = st.value("boundary_chi", 0);
                b.is_ball_certified = st.value("ball", false);
                b.bdry = bdry_from(st.value("bdry", 0));
                sk.bodies.push_back(b);
            } else if (dim == 2) {
                Face f;
                auto gt = st.at("germ_targets");
                if (gt.size() != 2) throw validation_error("2-stratum must have 2 germ targets");
                f.s0 = gt.at(0).get<int>();
                f.s1 = gt.at(1).get<int>();
                f.chi = st.at("chi").get<int>();
                f.boundary_chi = st.value("boundary_chi", 0);
                f.bdry = bdry_from(st.value("bdry", 0));
                sk.faces.push_back(f);
            } else if (dim == 1) {
                Edge e;
                auto gt = st.at("germ_targets");
                if (gt.size() != 3) throw validation_error("1-stratum must have 3 germ targets");
                for (int k = 0; k < 3; ++k) e.sector[k] = gt.at(k).get<int>();
                auto walls = st.at("walls");
                if (walls.size() != 3) throw validation_error("1-stratum must have 3 walls");
                for (int k = 0; k < 3; ++k) e.wall[k] = wall_from(walls.at(k));
                e.end0 = st.at("ends").at(0).get<int>();
                e.end1 = st.at("ends").at(1).get<int>();
                e.chi = st.at("chi").get<int>();
                e.boundary_chi = st.value("boundary_chi", 0);
                e.bdry = bdry_from(st.value("bdry", 0));
                e.monodromy = st.value("monodromy", 0);
                sk.edges.push_back(e);
            } else if (dim == 0) {
                Vertex v;
                auto gt = st.at("germ_targets");
                if (gt.size() != 4) throw validation_error("0-stratum must have 4 germ targets");
                for (int i = 0; i < 4; ++i) v.sector[i] = gt.at(i).get<int>();
                auto walls = st.at("walls");
                if (walls.size() != 6) throw validation_error("0-stratum must have 6 walls");
                for (int p = 0; p < 6; ++p) v.wall[p] = wall_from(walls.at(p));
                auto germs = st.at("germs");
                if (germs.size() != 4) throw validation_error("0-stratum must have 4 edge germs");
                for (int g = 0; g < 4; ++g) {
                    v.germ[g].edge = germs.at(g).at("edge").get<int>();
                    for (int t = 0; t < 3; ++t)
                        v.germ[g].slot_pos[t] = germs.at(g).at("slot_pos").at(t).get<int>();
                }
                sk.vertices.push_back(v);
            } else {
                throw validation_error("stratum dim out of range");
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        throw validation_error(std::string("skeleton document schema violation: ") + ex.what());
    }
    return sk;
}

Skeleton Skeleton::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open skeleton file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& ex) {
        throw io_error(std::string("cannot parse skeleton file: ") + ex.what());
    }
    return from_json(doc);
}

void Skeleton::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open file for writing: " + path);
    out << to_json().dump(1) << "\n";
}

// --- triangulation dual ---------------------------------------------------------

Skeleton dual_of_triangulation(const nlohmann::json& doc) {
    std::vector<std::array<int, 4>> tets;
    std::vector<int> order_list;
    try {
        for (const auto& t : doc.at("tetrahedra")) {
            if (t.size() != 4) throw validation_error("tetrahedron needs 4 vertices");
            tets.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>(), t.at(3).get<int>()});
        }
        order_list = doc.at("vertex_order").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& ex) {
        throw validation_error(std::string("triangulation schema violation: ") + ex.what());
    }
    std::map<int, int> order;  // global vertex -> rank
    for (size_t i = 0; i < order_list.size(); ++i) {
        if (order.count(order_list[i])) {
            throw validation_error("vertex_order must be injective (a repeated vertex would close a loop)");
        }
        order[order_list[i]] = static_cast<int>(i);
    }
    std::set<int> gverts;
    for (const auto& t : tets) {
        std::set<int> distinct(t.begin(), t.end());
        if (distinct.size() != 4) throw validation_error("tetrahedron has repeated vertices");
        for (int v : t) {
            gverts.insert(v);
            if (!order.count(v)) throw validation_error("vertex_order must cover all vertices");
        }
    }

    // faces of tets, keyed by sorted triple; parity = orientation the tet induces
    struct FaceUse { int tet; int omit; bool parity; };
    std::map<std::array<int, 3>, std::vector<FaceUse>> face_uses;
    for (int ti = 0; ti < static_cast<int>(tets.size()); ++ti) {
        for (int m = 0; m < 4; ++m) {
            std::array<int, 3> tri{};
            int k = 0;
            for (int i = 0; i < 4; ++i)
                if (i != m) tri[k++] = tets[ti][i];
            std::array<int, 3> sorted = tri;
            std::sort(sorted.begin(), sorted.end());
            // parity of the permutation sorting tri, xor position parity
            int par = (m % 2);
            std::array<int, 3> tmp = tri;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (tmp[i] > tmp[j]) { std::swap(tmp[i], tmp[j]); par ^= 1; }
            face_uses[sorted].push_back({ti, m, par == 1});
        }
    }
    for (auto& [tri, uses] : face_uses) {
        if (uses.size() != 2) throw validation_error("triangulation is not a closed 3-manifold (face gluing)");
        if (uses[0].parity == uses[1].parity) {
            throw validation_error("tetrahedron orientations are incompatible across a gluing");
        }
    }

    Skeleton sk;
    sk.id = "dual_of_triangulation";
    std::map<int, int> body_of;  // global vertex -> body id
    for (int gv : gverts) {
        body_of[gv] = static_cast<int>(sk.bodies.size());
        sk.bodies.push_back(Body{});
    }
    std::map<std::array<int, 2>, int> face_of;  // sorted vertex pair -> dual 2-stratum
    auto get_face = [&](int u, int v) -> int {
        std::array<int, 2> key{std::min(u, v), std::max(u, v)};
        auto it = face_of.find(key);
        if (it != face_of.end()) return it->second;
        int lo = order[u] < order[v] ? u : v;
        int hi = lo == u ? v : u;
        Face f;
        f.s0 = body_of[lo];
        f.s1 = body_of[hi];
        int id = static_cast<int>(sk.faces.size());
        sk.faces.push_back(f);
        face_of[key] = id;
        return id;
    };
    auto face_flip = [&](int u_at_low_slot, int v_at_high_slot) -> bool {
        // flip=false when the face's s0 (lower-ordered vertex body) sits at the lower slot
        return order[u_at_low_slot] > order[v_at_high_slot];
    };
    // dual edges per face triple; sectors sorted ascending by order rank
    std::map<std::array<int, 3>, int> edge_of;
    for (auto& [tri, uses] : face_uses) {
        std::array<int, 3> byrank = tri;
        std::sort(byrank.begin(), byrank.end(), [&](int a, int b) { return order[a] < order[b]; });
        Edge e;
        for (int t = 0; t < 3; ++t) e.sector[t] = body_of[byrank[t]];
        e.wall[0] = {get_face(byrank[0], byrank[1]), face_flip(byrank[0], byrank[1])};
        e.wall[1] = {get_face(byrank[1], byrank[2]), face_flip(byrank[1], byrank[2])};
        // wall[2] joins slot 2 (byrank[2]) to slot 0 (byrank[0])
        e.wall[2] = {get_face(byrank[2], byrank[0]), face_flip(byrank[2], byrank[0])};
        e.end0 = uses[0].tet;
        e.end1 = uses[1].tet;
        edge_of[tri] = static_cast<int>(sk.edges.size());
        sk.edges.push_back(e);
    }
    for (int ti = 0; ti < static_cast<int>(tets.size()); ++ti) {
        Vertex vx;
        for (int i = 0; i < 4; ++i) vx.sector[i] = body_of[tets[ti][i]];
        for (int p = 0; p < 6; ++p) {
            auto [i, j] = kPairs[p];
            int u = tets[ti][i], v = tets[ti][j];
            bool flip = order[u] > order[v];  // s0 (lower) must map to position of the lower vertex
            vx.wall[p] = {get_face(u, v), flip};
        }
        for (int m = 0; m < 4; ++m) {
            std::array<int, 3> tri{};
            std::array<int, 3> pos{};
            int k = 0;
            for (int i = 0; i < 4; ++i)
                if (i != m) { tri[k] = tets[ti][i]; pos[k] = i; ++k; }
            std::array<int, 3> sorted = tri;
            std::sort(sorted.begin(), sorted.end());
            std::array<int, 3> byrank = tri;
            std::sort(byrank.begin(), byrank.end(), [&](int a, int b) { return order[a] < order[b]; });
            VertexGerm g;
            g.edge = edge_of.at(sorted);
            for (int t = 0; t < 3; ++t) {
                for (int i = 0; i < 3; ++i)
                    if (tri[i] == byrank[t]) g.slot_pos[t] = pos[i];
            }
            vx.germ[m] = g;
        }
        sk.vertices.push_back(vx);
    }
    sk.require_valid();
    return sk;
}

}  // namespace otq
