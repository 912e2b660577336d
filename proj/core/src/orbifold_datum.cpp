#include "otq/orbifold_datum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "otq/evaluator.hpp"
#include "otq/moves.hpp"

namespace otq {

namespace {

inline std::size_t idx6(int n, int a, int b, int c, int d, int e, int f) {
    return ((((static_cast<std::size_t>(a) * n + b) * n + c) * n + d) * n + e) * n + f;
}

}  // namespace

cplx OrbifoldDatum::a0(int orient, int a, int b, int c, int d, int e, int f) const {
    const auto& t = orient > 0 ? a0_plus : a0_minus;
    return t[idx6(rank, a, b, c, d, e, f)];
}

double OrbifoldDatum::psi_pow(int label, int chi_sym) const {
    return std::pow(psi[label], chi_sym);
}

nlohmann::json OrbifoldDatum::to_json() const {
    nlohmann::json doc;
    doc["category"] = cat.to_json();
    doc["rank"] = rank;
    doc["psi"] = psi;
    doc["phi"] = phi;
    doc["index_order"] = "a,b,c,d,e,f (row-major)";
    auto dump = [&](const std::vector<cplx>& t) {
        nlohmann::json arr = nlohmann::json::array();
        for (const cplx& z : t) arr.push_back({z.real(), z.imag()});
        return arr;
    };
    doc["a0_plus"] = dump(a0_plus);
    doc["a0_minus"] = dump(a0_minus);
    return doc;
}

OrbifoldDatum datum_from_spherical(const FusionCategory& cat) {
    OrbifoldDatum d(cat);
    d.rank = cat.rank();
    const int n = d.rank;
    d.psi.resize(n);
    for (int i = 0; i < n; ++i) {
        if (cat.qdim(i) <= 0.0) {
            throw validation_error("the canonical datum requires positive quantum dimensions");
        }
        d.psi[i] = std::sqrt(cat.qdim(i));
    }
    d.phi = 1.0 / std::sqrt(cat.global_dim_sq());
    d.a0_plus.assign(static_cast<std::size_t>(std::pow(n, 6)), cplx(0.0));
    d.a0_minus = d.a0_plus;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d4 = 0; d4 < n; ++d4)
                    for (int e = 0; e < n; ++e)
                        for (int f = 0; f < n; ++f) {
                            double norm = d.psi[e] * d.psi[f];
                            d.a0_plus[idx6(n, a, b, c, d4, e, f)] = cat.F(a, b, c, d4, e, f) / norm;
                            d.a0_minus[idx6(n, a, b, c, d4, e, f)] = cat.Finv(a, b, c, d4, f, e) / norm;
                        }
    return d;
}

double AxiomReport::max_residual() const {
    double m = 0.0;
    for (const auto& a : axioms) m = std::max(m, a.residual);
    return m;
}

namespace {

// One realized rewrite pattern: a closed host with a site of the given
// oriented variant, plus the surviving pattern-adjacent faces to hold open
// on both sides of the move.
struct PatternInstance {
    MoveKind kind;
    int variant;
    Skeleton sk;
    LocalOrder bits;
    MoveSite site;
    std::vector<int> open_before;
};

std::vector<int> adjacent_faces(const Skeleton& sk, const MoveSite& site) {
    std::vector<int> out;
    switch (site.kind) {
        case MoveKind::B:
            out.push_back(site.anchors[0]);
            break;
        case MoveKind::L: {
            // surviving sheets: the non-disc walls of both strand edges
            int disc = site.anchors[0];
            for (int s = 0; s < 2; ++s) {
                const Edge& ed = sk.edges[site.anchors[1 + 2 * s]];
                int k = site.anchors[2 + 2 * s];
                out.push_back(ed.wall[(k + 1) % 3].face);
                out.push_back(ed.wall[(k + 2) % 3].face);
            }
            out.erase(std::remove(out.begin(), out.end(), disc), out.end());
            break;
        }
        case MoveKind::T: {
            const Edge& ed = sk.edges[site.anchors[0]];
            for (int k = 0; k < 3; ++k) out.push_back(ed.wall[k].face);
            for (int end = 0; end < 2; ++end) {
                int v = end == 0 ? ed.end0 : ed.end1;
                for (int p = 0; p < 6; ++p) out.push_back(sk.vertices[v].wall[p].face);
            }
            break;
        }
        default:
            throw validation_error("pattern instances cover forward moves only");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const std::vector<PatternInstance>& pattern_instances() {
    static const std::vector<PatternInstance> instances = [] {
        std::vector<std::pair<int, Skeleton>> hosts;  // (face count, host)
        auto add = [&](const Skeleton& sk) { hosts.push_back({static_cast<int>(sk.faces.size()), sk}); };
        add(make_s3_two_balls());
        add(make_lens(1));
        add(make_lens(2));
        add(make_lens(3));
        add(make_s2xs1_product());
        {
            SolveOptions first;
            first.first_only = true;
            for (int p : {2, 3}) {
                Skeleton base = make_lens(p);
                LocalOrder bits = solve_local_order(base, first)[0];
                for (uint64_t seed = 1; seed <= 10; ++seed) {
                    add(random_walk(base, bits, 4, seed + (p == 3 ? 100 : 0)).sk);
                }
            }
        }
        std::stable_sort(hosts.begin(), hosts.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });

        std::map<std::pair<MoveKind, int>, PatternInstance> found;
        int wanted = variant_count(MoveKind::B) + variant_count(MoveKind::L) + variant_count(MoveKind::T);
        SolveOptions opts;
        opts.cap = 64;
        for (const auto& [nf, sk] : hosts) {
            if (static_cast<int>(found.size()) == wanted) break;
            for (const LocalOrder& bits : solve_local_order(sk, opts)) {
                for (MoveKind k : {MoveKind::B, MoveKind::L, MoveKind::T}) {
                    for (const MoveSite& site : find_sites(sk, bits, k)) {
                        auto key = std::make_pair(k, site.variant);
                        if (found.count(key)) continue;
                        PatternInstance inst;
                        inst.kind = k;
                        inst.variant = site.variant;
                        inst.sk = sk;
                        inst.bits = bits;
                        inst.site = site;
                        inst.open_before = adjacent_faces(sk, site);
                        found.emplace(key, std::move(inst));
                    }
                }
            }
        }
        if (static_cast<int>(found.size()) != wanted) {
            throw validation_error("failed to realize every oriented rewrite variant on the host pool");
        }
        std::vector<PatternInstance> out;
        for (auto& [key, inst] : found) out.push_back(std::move(inst));
        return out;
    }();
    return instances;
}

double instance_residual(const PatternInstance& inst, const OrbifoldDatum& datum) {
    // hold as many adjacent sheets open as the label domain allows
    std::vector<int> open = inst.open_before;
    std::size_t budget = 500'000;
    while (!open.empty()) {
        double sz = std::pow(static_cast<double>(datum.rank), static_cast<double>(open.size()));
        if (sz <= static_cast<double>(budget)) break;
        open.pop_back();
    }
    DenseTensor before = contract(foamify(decorate(inst.sk, inst.bits, datum), open));
    OrientedResult res = apply_move(inst.sk, inst.bits, inst.site);
    std::vector<int> open_after = open;
    if (inst.kind == MoveKind::L) {
        int disc = inst.site.anchors[0];
        for (int& f : open_after)
            if (f > disc) --f;
    }
    DenseTensor after = contract(foamify(decorate(res.sk, res.bits, datum), open_after));
    double r = 0.0;
    for (std::size_t i = 0; i < before.values.size(); ++i) {
        r = std::max(r, std::abs(before.values[i] - after.values[i]));
    }
    return r;
}

// The four mutual-inverse contractions of a0+ and a0-, each reduced to a
// weighted delta by the psi normalization.
double inverse_pair_residual(const OrbifoldDatum& d) {
    const int n = d.rank;
    const FusionCategory& cat = d.cat;
    double r = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d4 = 0; d4 < n; ++d4) {
                    bool any = false;
                    for (int e = 0; e < n && !any; ++e)
                        if (cat.admissible_e(a, b, c, d4, e)) any = true;
                    if (!any) continue;
                    for (int e = 0; e < n; ++e)
                        for (int e2 = 0; e2 < n; ++e2) {
                            if (!cat.admissible_e(a, b, c, d4, e) || !cat.admissible_e(a, b, c, d4, e2))
                                continue;
                            cplx s1 = 0.0, s2 = 0.0;
                            for (int f = 0; f < n; ++f) {
                                double w = d.psi[f] * d.psi[f];
                                s1 += d.a0(+1, a, b, c, d4, e, f) * d.a0(-1, a, b, c, d4, e2, f) * w;
                                s2 += d.a0(-1, a, b, c, d4, e, f) * d.a0(+1, a, b, c, d4, e2, f) * w;
                            }
                            cplx target = e == e2 ? cplx(1.0 / (d.psi[e] * d.psi[e])) : cplx(0.0);
                            r = std::max(r, std::abs(s1 - target));
                            r = std::max(r, std::abs(s2 - target));
                        }
                    for (int f = 0; f < n; ++f)
                        for (int f2 = 0; f2 < n; ++f2) {
                            if (!cat.admissible_f(a, b, c, d4, f) || !cat.admissible_f(a, b, c, d4, f2))
                                continue;
                            cplx s1 = 0.0, s2 = 0.0;
                            for (int e = 0; e < n; ++e) {
                                double w = d.psi[e] * d.psi[e];
                                s1 += d.a0(-1, a, b, c, d4, e, f) * d.a0(+1, a, b, c, d4, e, f2) * w;
                                s2 += d.a0(+1, a, b, c, d4, e, f) * d.a0(-1, a, b, c, d4, e, f2) * w;
                            }
                            cplx target = f == f2 ? cplx(1.0 / (d.psi[f] * d.psi[f])) : cplx(0.0);
                            r = std::max(r, std::abs(s1 - target));
                            r = std::max(r, std::abs(s2 - target));
                        }
                }
    return r;
}

}  // namespace

AxiomReport check_O_axioms(const OrbifoldDatum& datum) {
    AxiomReport report;
    report.axioms.resize(8);
    for (int i = 0; i < 8; ++i) report.axioms[i].name = "O" + std::to_string(i + 1);
    for (const PatternInstance& inst : pattern_instances()) {
        double r = instance_residual(inst, datum);
        int family;
        switch (inst.kind) {
            case MoveKind::T:
                family = 0;  // the recombination identity
                break;
            case MoveKind::L:
                family = 1 + inst.variant % 6;  // the six collision identities
                break;
            default:
                family = 7;  // the pocket / normalization identity
                break;
        }
        report.axioms[family].residual = std::max(report.axioms[family].residual, r);
    }
    report.axioms[7].residual = std::max(report.axioms[7].residual, inverse_pair_residual(datum));
    return report;
}

}  // namespace otq
