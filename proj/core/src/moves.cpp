#include "moves_common.hpp"

#include <random>
#include <sstream>

namespace otq {

using detail::Builder;
using detail::wall_s0_slot;

std::string to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::B: return "B";
        case MoveKind::Binv: return "B_inv";
        case MoveKind::L: return "L";
        case MoveKind::Linv: return "L_inv";
        case MoveKind::T: return "T";
        case MoveKind::Tinv: return "T_inv";
    }
    throw std::logic_error("bad move kind");
}

MoveKind move_kind_from_string(const std::string& s) {
    if (s == "B") return MoveKind::B;
    if (s == "B_inv") return MoveKind::Binv;
    if (s == "L") return MoveKind::L;
    if (s == "L_inv") return MoveKind::Linv;
    if (s == "T") return MoveKind::T;
    if (s == "T_inv") return MoveKind::Tinv;
    throw validation_error("unknown move kind: " + s);
}

namespace detail {

std::vector<uint8_t> sigma_B(const std::vector<uint8_t>& v) {
    // half-turn of the pocket: F reverses sides, U and W exchange reversed
    return {static_cast<uint8_t>(1 - v[0]), static_cast<uint8_t>(1 - v[2]),
            static_cast<uint8_t>(1 - v[1])};
}

std::vector<uint8_t> sigma_L(const std::vector<uint8_t>& v) {
    // half-turn swapping the strands and the two sides of the shared sheet
    return {static_cast<uint8_t>(1 - v[3]), static_cast<uint8_t>(1 - v[2]),
            static_cast<uint8_t>(1 - v[1]), static_cast<uint8_t>(1 - v[0]),
            static_cast<uint8_t>(1 - v[4])};
}

namespace {

bool valid_B(const std::vector<uint8_t>& v) {
    // relations at the pocket circle: X<Z iff U=0, Z<Y iff W=0, X<Y iff F=0
    bool cyc1 = v[1] == 0 && v[2] == 0 && v[0] == 1;
    bool cyc2 = v[1] == 1 && v[2] == 1 && v[0] == 0;
    return !cyc1 && !cyc2;
}

bool strand_ok(uint8_t a, uint8_t b, uint8_t e) {
    // relations: a: side<top, b: bottom<side, e: bottom<top; reject 3-cycles
    bool cyc1 = a == 0 && b == 0 && e == 1;
    bool cyc2 = a == 1 && b == 1 && e == 0;
    return !cyc1 && !cyc2;
}

bool valid_L(const std::vector<uint8_t>& v) {
    return strand_ok(v[0], v[1], v[4]) && strand_ok(v[2], v[3], v[4]);
}

// symmetries of the recombination pattern: rotations of the three shared
// sectors, and reflections combined with swapping the two end sectors
const int kTGroup[6][5] = {
    {0, 1, 2, 3, 4}, {0, 2, 3, 1, 4}, {0, 3, 1, 2, 4},
    {4, 2, 1, 3, 0}, {4, 3, 2, 1, 0}, {4, 1, 3, 2, 0},
};

std::vector<std::vector<uint8_t>> gen_table(MoveKind kind) {
    std::set<std::vector<uint8_t>> canon;
    if (kind == MoveKind::B || kind == MoveKind::Binv) {
        for (int m = 0; m < 8; ++m) {
            std::vector<uint8_t> v = {static_cast<uint8_t>(m & 1), static_cast<uint8_t>((m >> 1) & 1),
                                      static_cast<uint8_t>((m >> 2) & 1)};
            if (!valid_B(v)) continue;
            canon.insert(std::min(v, sigma_B(v)));
        }
    } else if (kind == MoveKind::L || kind == MoveKind::Linv) {
        for (int m = 0; m < 32; ++m) {
            std::vector<uint8_t> v(5);
            for (int i = 0; i < 5; ++i) v[i] = (m >> i) & 1;
            if (!valid_L(v)) continue;
            canon.insert(std::min(v, sigma_L(v)));
        }
    } else {
        std::vector<uint8_t> rank = {0, 1, 2, 3, 4};
        std::sort(rank.begin(), rank.end());
        do {
            std::vector<uint8_t> best = rank;
            for (const auto& g : kTGroup) {
                std::vector<uint8_t> img(5);
                for (int r = 0; r < 5; ++r) img[g[r]] = rank[r];
                best = std::min(best, img);
            }
            canon.insert(best);
        } while (std::next_permutation(rank.begin(), rank.end()));
    }
    return {canon.begin(), canon.end()};
}

}  // namespace

int canon_index(MoveKind kind, const std::vector<uint8_t>& raw) {
    std::vector<uint8_t> best = raw;
    if (kind == MoveKind::B || kind == MoveKind::Binv) {
        best = std::min(best, sigma_B(raw));
    } else if (kind == MoveKind::L || kind == MoveKind::Linv) {
        best = std::min(best, sigma_L(raw));
    } else {
        for (const auto& g : kTGroup) {
            std::vector<uint8_t> img(5);
            for (int r = 0; r < 5; ++r) img[g[r]] = raw[r];
            best = std::min(best, img);
        }
    }
    const auto& table = variant_table(kind);
    auto it = std::find(table.begin(), table.end(), best);
    if (it == table.end()) throw std::logic_error("orientation assignment outside variant table");
    return static_cast<int>(it - table.begin());
}

// --- pocket move -------------------------------------------------------------

std::vector<MoveSite> find_sites_B(const Skeleton& sk, const LocalOrder&) {
    std::vector<MoveSite> out;
    for (int f = 0; f < static_cast<int>(sk.faces.size()); ++f) {
        if (sk.faces[f].bdry != Boundary::none) continue;
        for (int v = 0; v < variant_count(MoveKind::B); ++v) {
            out.push_back({MoveKind::B, v, {f}});
        }
    }
    return out;
}

OrientedResult apply_B(const Skeleton& sk, const LocalOrder& bits, const MoveSite& site) {
    int f = site.anchors.at(0);
    if (f < 0 || f >= static_cast<int>(sk.faces.size()) || sk.faces[f].bdry != Boundary::none)
        throw validation_error("stale pocket site");
    std::vector<uint8_t> rep = variant_table(MoveKind::B).at(site.variant);
    if (rep[0] != bits[f]) rep = sigma_B(rep);
    if (rep[0] != bits[f]) throw std::logic_error("pocket variant cannot align");
    Builder bld(sk, bits);
    int X = sk.faces[f].s0, Y = sk.faces[f].s1;
    int Z = bld.add_body();
    int U = bld.add_face(X, Z, 1, rep[1]);
    int W = bld.add_face(Z, Y, 1, rep[2]);
    bld.sk.faces[f].chi -= 1;
    Edge c;
    c.sector = {X, Z, Y};
    c.wall = {Wall{U, false}, Wall{W, false}, Wall{f, true}};
    c.end0 = c.end1 = kCircle;
    c.chi = 0;
    bld.add_edge(c);
    return bld.finish("pocket move");
}

std::vector<MoveSite> find_sites_Binv(const Skeleton& sk, const LocalOrder& bits) {
    std::vector<MoveSite> out;
    // occurrence counts of each face among all walls
    std::vector<int> occ(sk.faces.size(), 0);
    for (const auto& e : sk.edges)
        for (int k = 0; k < 3; ++k) occ[e.wall[k].face]++;
    for (const auto& v : sk.vertices)
        for (int p = 0; p < 6; ++p) occ[v.wall[p].face]++;
    std::vector<int> body_face_refs(sk.bodies.size(), 0), body_other_refs(sk.bodies.size(), 0);
    for (const auto& f : sk.faces) {
        body_face_refs[f.s0]++;
        body_face_refs[f.s1]++;
    }
    for (const auto& e : sk.edges)
        for (int k = 0; k < 3; ++k) body_other_refs[e.sector[k]]++;
    for (const auto& v : sk.vertices)
        for (int i = 0; i < 4; ++i) body_other_refs[v.sector[i]]++;

    for (int c = 0; c < static_cast<int>(sk.edges.size()); ++c) {
        const Edge& ed = sk.edges[c];
        if (ed.end0 != kCircle || ed.monodromy != 0 || ed.bdry != Boundary::none) continue;
        for (int z = 0; z < 3; ++z) {
            int Uf = ed.wall[(z + 2) % 3].face;
            int Wf = ed.wall[z].face;
            int Ff = ed.wall[(z + 1) % 3].face;
            if (Uf == Wf || Uf == Ff || Wf == Ff) continue;
            if (sk.faces[Uf].chi != 1 || sk.faces[Wf].chi != 1) continue;
            if (sk.faces[Uf].bdry != Boundary::none || sk.faces[Wf].bdry != Boundary::none)
                continue;
            if (occ[Uf] != 1 || occ[Wf] != 1) continue;
            int Z = ed.sector[z];
            int X = ed.sector[(z + 2) % 3], Y = ed.sector[(z + 1) % 3];
            if (Z == X || Z == Y) continue;
            // the pocket interior must be a ball touching nothing but the caps
            const Body& zb = sk.bodies[Z];
            if (zb.chi != 1 || zb.boundary_chi != 0 || zb.bdry != Boundary::none ||
                !zb.is_ball_certified)
                continue;
            if (body_face_refs[Z] != 2 || body_other_refs[Z] != 1) continue;
            uint8_t bF = bits[Ff] ^ (wall_s0_slot(ed, (z + 1) % 3) != (z + 2) % 3 ? 1 : 0);
            uint8_t bU = bits[Uf] ^ (wall_s0_slot(ed, (z + 2) % 3) != (z + 2) % 3 ? 1 : 0);
            uint8_t bW = bits[Wf] ^ (wall_s0_slot(ed, z) != z ? 1 : 0);
            int var = canon_index(MoveKind::Binv, {bF, bU, bW});
            out.push_back({MoveKind::Binv, var, {c, z}});
        }
    }
    return out;
}

OrientedResult apply_Binv(const Skeleton& sk, const LocalOrder& bits, const MoveSite& site) {
    int c = site.anchors.at(0), z = site.anchors.at(1);
    auto sites = find_sites_Binv(sk, bits);
    bool ok = false;
    for (const auto& s : sites)
        if (s.anchors == site.anchors && s.variant == site.variant) ok = true;
    if (!ok) throw validation_error("stale pocket-inverse site");
    const Edge& ed = sk.edges[c];
    Builder bld(sk, bits);
    int Uf = ed.wall[(z + 2) % 3].face;
    int Wf = ed.wall[z].face;
    int Ff = ed.wall[(z + 1) % 3].face;
    bld.sk.faces[Ff].chi += 1;
    bld.del_face[Uf] = bld.del_face[Wf] = 1;
    bld.del_body[ed.sector[z]] = 1;
    bld.del_edge[c] = 1;
    return bld.finish("pocket-inverse move");
}

}  // namespace detail

const std::vector<std::vector<uint8_t>>& variant_table(MoveKind kind) {
    static const std::vector<std::vector<uint8_t>> tb = detail::gen_table(MoveKind::B);
    static const std::vector<std::vector<uint8_t>> tl = detail::gen_table(MoveKind::L);
    static const std::vector<std::vector<uint8_t>> tt = detail::gen_table(MoveKind::T);
    switch (kind) {
        case MoveKind::B:
        case MoveKind::Binv: return tb;
        case MoveKind::L:
        case MoveKind::Linv: return tl;
        case MoveKind::T:
        case MoveKind::Tinv: return tt;
    }
    throw std::logic_error("bad move kind");
}

int variant_count(MoveKind kind) { return static_cast<int>(variant_table(kind).size()); }

std::vector<MoveSite> find_sites(const Skeleton& sk, const LocalOrder& bits, MoveKind kind) {
    if (bits.size() != sk.faces.size()) throw validation_error("orientation bits do not match skeleton");
    switch (kind) {
        case MoveKind::B: return detail::find_sites_B(sk, bits);
        case MoveKind::Binv: return detail::find_sites_Binv(sk, bits);
        case MoveKind::L: return detail::find_sites_L(sk, bits);
        case MoveKind::Linv: return detail::find_sites_Linv(sk, bits);
        case MoveKind::T: return detail::find_sites_T(sk, bits);
        case MoveKind::Tinv: return detail::find_sites_Tinv(sk, bits);
    }
    throw std::logic_error("bad move kind");
}

OrientedResult apply_move(const Skeleton& sk, const LocalOrder& bits, const MoveSite& site) {
    switch (site.kind) {
        case MoveKind::B: return detail::apply_B(sk, bits, site);
        case MoveKind::Binv: return detail::apply_Binv(sk, bits, site);
        case MoveKind::L: return detail::apply_L(sk, bits, site);
        case MoveKind::Linv: return detail::apply_Linv(sk, bits, site);
        case MoveKind::T: return detail::apply_T(sk, bits, site);
        case MoveKind::Tinv: return detail::apply_Tinv(sk, bits, site);
    }
    throw std::logic_error("bad move kind");
}

WalkResult random_walk(const Skeleton& sk, const LocalOrder& bits, int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    WalkResult res{sk, bits, nlohmann::json::array()};
    const MoveKind kinds[] = {MoveKind::B,    MoveKind::Binv, MoveKind::L,
                              MoveKind::Linv, MoveKind::T,    MoveKind::Tinv};
    for (int step = 0; step < n; ++step) {
        std::vector<MoveSite> all;
        for (MoveKind k : kinds) {
            auto sites = find_sites(res.sk, res.bits, k);
            all.insert(all.end(), sites.begin(), sites.end());
        }
        if (all.empty()) break;
        std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
        const MoveSite& site = all[pick(rng)];
        auto next = apply_move(res.sk, res.bits, site);
        res.sk = std::move(next.sk);
        res.bits = std::move(next.bits);
        res.log.push_back({{"kind", to_string(site.kind)},
                           {"variant", site.variant},
                           {"site", site.anchors}});
    }
    return res;
}

OrientedResult replay(const Skeleton& sk, const LocalOrder& bits, const nlohmann::json& log) {
    OrientedResult cur{sk, bits};
    for (const auto& entry : log) {
        MoveSite site;
        site.kind = move_kind_from_string(entry.at("kind").get<std::string>());
        site.variant = entry.at("variant").get<int>();
        site.anchors = entry.at("site").get<std::vector<int>>();
        cur = apply_move(cur.sk, cur.bits, site);
    }
    return cur;
}

std::string move_log_hash(const nlohmann::json& log) {
    std::string s = log.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace otq
