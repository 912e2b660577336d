#include "otq/wilson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace otq {

namespace {

nlohmann::json phases_to_json(const std::vector<cplx>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const cplx& z : v) arr.push_back({z.real(), z.imag()});
    return arr;
}

std::vector<cplx> phases_from_json(const nlohmann::json& arr) {
    std::vector<cplx> out;
    for (const auto& p : arr) out.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return out;
}

std::vector<cplx> conj_all(const std::vector<cplx>& v) {
    std::vector<cplx> out;
    for (const cplx& z : v) out.push_back(std::conj(z));
    return out;
}

// the unique fusion product of a pointed pair of labels
int pointed_product(const FusionCategory& cat, int a, int b) {
    int prod = -1;
    for (int c = 0; c < cat.rank(); ++c) {
        if (cat.fusion(a, b, c) >= 1) {
            if (prod >= 0) throw validation_error("category is not pointed (non-unique fusion)");
            prod = c;
        }
    }
    if (prod < 0) throw validation_error("category has an empty fusion product");
    return prod;
}

cplx int_pow(cplx z, int k) {
    cplx out(1.0);
    cplx base = k >= 0 ? z : cplx(1.0) / z;
    for (int i = 0; i < std::abs(k); ++i) out *= base;
    return out;
}

}  // namespace

nlohmann::json WilsonObject::to_json() const {
    return {{"rank", rank},     {"g", g},
            {"tau1", phases_to_json(tau1)},         {"tau2", phases_to_json(tau2)},
            {"tau1_bar", phases_to_json(tau1_bar)}, {"tau2_bar", phases_to_json(tau2_bar)}};
}

WilsonObject WilsonObject::from_json(const nlohmann::json& doc) {
    WilsonObject o;
    o.rank = doc.at("rank").get<int>();
    o.g = doc.at("g").get<int>();
    o.tau1 = phases_from_json(doc.at("tau1"));
    o.tau2 = phases_from_json(doc.at("tau2"));
    o.tau1_bar = phases_from_json(doc.at("tau1_bar"));
    o.tau2_bar = phases_from_json(doc.at("tau2_bar"));
    if (static_cast<int>(o.tau1.size()) != o.rank || static_cast<int>(o.tau2.size()) != o.rank ||
        static_cast<int>(o.tau1_bar.size()) != o.rank ||
        static_cast<int>(o.tau2_bar.size()) != o.rank || o.g < 0 || o.g >= o.rank) {
        throw validation_error("malformed line-object document");
    }
    return o;
}

WilsonObject wilson_unit(int rank) { return center_object(rank, 0, 0); }

WilsonObject center_object(int rank, int g, int k) {
    WilsonObject o;
    o.rank = rank;
    o.g = ((g % rank) + rank) % rank;
    for (int h = 0; h < rank; ++h) {
        cplx chi = std::polar(1.0, 2.0 * std::numbers::pi * k * h / rank);
        o.tau1.push_back(chi);
        o.tau2.push_back(std::conj(chi));
    }
    o.tau1_bar = conj_all(o.tau1);
    o.tau2_bar = conj_all(o.tau2);
    return o;
}

AxiomReport check_T_axioms(const OrbifoldDatum& datum, const WilsonObject& obj) {
    const FusionCategory& cat = datum.cat;
    const int n = cat.rank();
    if (obj.rank != n) throw validation_error("line object rank does not match the datum");
    AxiomReport report;
    report.axioms.resize(7);
    for (int i = 0; i < 7; ++i) report.axioms[i].name = "T" + std::to_string(i + 1);
    auto& ax = report.axioms;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            int c = pointed_product(cat, a, b);
            ax[0].residual = std::max(ax[0].residual, std::abs(obj.tau1[c] - obj.tau1[a] * obj.tau1[b]));
            ax[1].residual = std::max(ax[1].residual, std::abs(obj.tau2[c] - obj.tau2[a] * obj.tau2[b]));
        }
        ax[2].residual = std::max(ax[2].residual, std::abs(obj.tau1[a] * obj.tau2[a] - cplx(1.0)));
        ax[3].residual = std::max(ax[3].residual, std::abs(obj.tau1[a] * obj.tau1_bar[a] - cplx(1.0)));
        ax[4].residual = std::max(ax[4].residual, std::abs(obj.tau2[a] * obj.tau2_bar[a] - cplx(1.0)));
        ax[5].residual = std::max(ax[5].residual, std::abs(std::abs(obj.tau1[a]) - 1.0));
        ax[5].residual = std::max(ax[5].residual, std::abs(std::abs(obj.tau2[a]) - 1.0));
    }
    ax[5].residual = std::max(ax[5].residual, std::abs(obj.tau1[0] - cplx(1.0)));
    ax[5].residual = std::max(ax[5].residual, std::abs(obj.tau2[0] - cplx(1.0)));
    ax[6].residual = std::abs(twist_left(obj) - twist_right(obj));
    return report;
}

std::vector<WilsonObject> center_objects_pointed(const OrbifoldDatum& datum) {
    const FusionCategory& cat = datum.cat;
    const int n = cat.rank();
    for (int i = 0; i < n; ++i) {
        if (std::abs(cat.qdim(i) - 1.0) > 1e-12) {
            throw validation_error("center search requires a pointed datum");
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int ab = pointed_product(cat, a, b), bc = pointed_product(cat, b, c);
                int abc = pointed_product(cat, ab, c);
                if (std::abs(cat.F(a, b, c, abc, ab, bc) - cplx(1.0)) > 1e-12) {
                    throw validation_error("center search requires a trivial associator");
                }
            }
    // brute force: grade g, tau1 drawn from n-th roots of unity per label
    std::vector<WilsonObject> out;
    std::size_t total = 1;
    for (int h = 0; h < n; ++h) total *= static_cast<std::size_t>(n);
    for (int g = 0; g < n; ++g) {
        for (std::size_t code = 0; code < total; ++code) {
            WilsonObject o;
            o.rank = n;
            o.g = g;
            std::size_t rest = code;
            for (int h = 0; h < n; ++h) {
                int t = static_cast<int>(rest % n);
                rest /= n;
                o.tau1.push_back(std::polar(1.0, 2.0 * std::numbers::pi * t / n));
            }
            o.tau2 = conj_all(o.tau1);
            o.tau1_bar = conj_all(o.tau1);
            o.tau2_bar = conj_all(o.tau2);
            if (check_T_axioms(datum, o).max_residual() < 1e-10) out.push_back(std::move(o));
        }
    }
    return out;
}

WilsonObject tensor_object(const WilsonObject& a, const WilsonObject& b) {
    if (a.rank != b.rank) throw validation_error("tensor of line objects over different data");
    WilsonObject o;
    o.rank = a.rank;
    o.g = (a.g + b.g) % a.rank;
    for (int h = 0; h < a.rank; ++h) {
        o.tau1.push_back(a.tau1[h] * b.tau1[h]);
        o.tau2.push_back(a.tau2[h] * b.tau2[h]);
        o.tau1_bar.push_back(a.tau1_bar[h] * b.tau1_bar[h]);
        o.tau2_bar.push_back(a.tau2_bar[h] * b.tau2_bar[h]);
    }
    return o;
}

WilsonObject dual_object(const WilsonObject& a) {
    WilsonObject o;
    o.rank = a.rank;
    o.g = (a.rank - a.g) % a.rank;
    o.tau1 = conj_all(a.tau1);
    o.tau2 = conj_all(a.tau2);
    o.tau1_bar = conj_all(a.tau1_bar);
    o.tau2_bar = conj_all(a.tau2_bar);
    return o;
}

cplx braiding(const WilsonObject& x, const WilsonObject& y) { return y.tau1[x.g]; }

cplx twist_left(const WilsonObject& x) { return x.tau1[x.g]; }

cplx twist_right(const WilsonObject& x) { return cplx(1.0) / x.tau2[x.g]; }

// --- decorated ribbon diagrams ------------------------------------------------

RibbonDiagramDecorated decorate_diagram(const Skeleton& sk, const nlohmann::json& graph_doc,
                                        const OrbifoldDatum& datum) {
    for (const Face& f : sk.faces) {
        if (f.bdry != Boundary::none) {
            throw validation_error("graph evaluation is implemented for closed skeleta");
        }
    }
    SolveOptions first;
    first.first_only = true;
    auto orders = solve_local_order(sk, first);
    if (orders.empty()) throw validation_error("skeleton admits no orientation order");
    RibbonDiagramDecorated d(sk, orders[0], datum);
    DecoratedSkeleton base = decorate(sk, d.bits, datum);
    d.psi_exponent = base.psi_exponent;
    d.phi_exponent = base.phi_exponent;

    for (const auto& cdoc : graph_doc.value("colors", nlohmann::json::array())) {
        WilsonObject o = cdoc.contains("tau1")
                             ? WilsonObject::from_json(cdoc)
                             : center_object(datum.rank, cdoc.at("g").get<int>(),
                                             cdoc.value("chi", 0));
        if (check_T_axioms(datum, o).max_residual() > 1e-6) {
            throw validation_error("diagram color fails the line-object identities");
        }
        d.colors.push_back(std::move(o));
    }
    for (const auto& sdoc : graph_doc.value("strands", nlohmann::json::array())) {
        RibbonStrand s;
        s.color = sdoc.at("color").get<int>();
        s.mult = sdoc.value("mult", 1);
        s.writhe = sdoc.value("writhe", 0);
        s.closed = sdoc.value("closed", true);
        if (s.color < 0 || s.color >= static_cast<int>(d.colors.size()) || s.mult < 1) {
            throw validation_error("malformed strand");
        }
        d.strands.push_back(s);
    }
    const int ns = static_cast<int>(d.strands.size());
    for (const auto& xdoc : graph_doc.value("crossings", nlohmann::json::array())) {
        RibbonCrossing x;
        x.over = xdoc.at("over").get<int>();
        x.under = xdoc.at("under").get<int>();
        x.sign = xdoc.value("sign", +1);
        if (x.over < 0 || x.over >= ns || x.under < 0 || x.under >= ns ||
            (x.sign != 1 && x.sign != -1) || d.strands[x.over].mult != 1 ||
            d.strands[x.under].mult != 1) {
            throw validation_error("malformed crossing");
        }
        d.crossings.push_back(x);
    }
    std::size_t switch_id = 0;
    for (const auto& wdoc : graph_doc.value("switches", nlohmann::json::array())) {
        RibbonSwitch w;
        w.strand = wdoc.at("strand").get<int>();
        w.type = wdoc.at("type").get<std::string>();
        w.label = wdoc.value("label", 0);
        w.positive = wdoc.value("positive", true);
        if (!w.positive) {
            throw validation_error("switch " + std::to_string(switch_id) + " is not positive");
        }
        if (w.strand < 0 || w.strand >= ns || d.strands[w.strand].mult != 1 || w.label < 0 ||
            w.label >= datum.rank ||
            (w.type != "tau1" && w.type != "tau2" && w.type != "tau1_bar" && w.type != "tau2_bar")) {
            throw validation_error("malformed switch");
        }
        d.switches.push_back(w);
        ++switch_id;
    }
    std::vector<int> outs_seen(ns, 0), ins_seen(ns, 0);
    for (const auto& kdoc : graph_doc.value("coupons", nlohmann::json::array())) {
        RibbonCoupon k;
        for (const auto& s : kdoc.value("ins", nlohmann::json::array())) k.ins.push_back(s.get<int>());
        for (const auto& s : kdoc.value("outs", nlohmann::json::array())) k.outs.push_back(s.get<int>());
        k.face = kdoc.value("face", 0);
        std::size_t rows = 1, cols = 1;
        std::vector<int> touched;
        for (int s : k.outs) {
            if (s < 0 || s >= ns) throw validation_error("malformed coupon");
            rows *= static_cast<std::size_t>(d.strands[s].mult);
            outs_seen[s]++;
            touched.push_back(s);
        }
        for (int s : k.ins) {
            if (s < 0 || s >= ns) throw validation_error("malformed coupon");
            cols *= static_cast<std::size_t>(d.strands[s].mult);
            ins_seen[s]++;
            touched.push_back(s);
        }
        std::sort(touched.begin(), touched.end());
        if (std::adjacent_find(touched.begin(), touched.end()) != touched.end()) {
            throw validation_error("a strand meets the same coupon twice");
        }
        if (k.face < 0 || k.face >= static_cast<int>(sk.faces.size())) {
            throw validation_error("coupon sheet id out of range");
        }
        for (const auto& ent : kdoc.at("matrix")) {
            k.matrix.emplace_back(ent.at(0).get<double>(), ent.at(1).get<double>());
        }
        if (k.matrix.size() != rows * cols) throw validation_error("coupon matrix shape mismatch");
        // intertwining: the coupon must conserve the grade and the crossing
        // phases, or carry the zero morphism
        int gin = 0, gout = 0;
        std::vector<cplx> pin(datum.rank, cplx(1.0)), pout(datum.rank, cplx(1.0));
        for (int s : k.ins) {
            gin = (gin + d.colors[d.strands[s].color].g) % datum.rank;
            for (int h = 0; h < datum.rank; ++h) pin[h] *= d.colors[d.strands[s].color].tau1[h];
        }
        for (int s : k.outs) {
            gout = (gout + d.colors[d.strands[s].color].g) % datum.rank;
            for (int h = 0; h < datum.rank; ++h) pout[h] *= d.colors[d.strands[s].color].tau1[h];
        }
        double mismatch = gin == gout ? 0.0 : 1.0;
        for (int h = 0; h < datum.rank; ++h) mismatch = std::max(mismatch, std::abs(pin[h] - pout[h]));
        if (mismatch > 1e-9) {
            double norm = 0.0;
            for (const cplx& z : k.matrix) norm = std::max(norm, std::abs(z));
            if (norm > 0.0) {
                throw validation_error("coupon violates the intertwining conditions");
            }
        }
        d.coupon_psi_face.push_back(k.face);  // leftmost sheet component
        d.coupon_psi_face.push_back(k.face);  // rightmost sheet component
        d.coupons.push_back(std::move(k));
    }
    for (int s = 0; s < ns; ++s) {
        bool wired = outs_seen[s] == 1 && ins_seen[s] == 1;
        bool free_loop = outs_seen[s] == 0 && ins_seen[s] == 0;
        if (d.strands[s].closed ? !free_loop : !wired) {
            throw validation_error("strand " + std::to_string(s) + " is wired inconsistently");
        }
    }
    return d;
}

cplx evaluate_graph(const RibbonDiagramDecorated& d, std::size_t cap) {
    TensorNetwork tn = foamify(decorate(d.sk, d.bits, d.datum));
    const int nfaces = static_cast<int>(d.sk.faces.size());
    const int n = d.datum.rank;
    // one variable per strand (its multiplicity index)
    for (const RibbonStrand& s : d.strands) tn.var_dim.push_back(s.mult);
    auto phase_of = [&](const WilsonObject& o, const std::string& type, int label) {
        if (type == "tau1") return o.tau1[label];
        if (type == "tau2") return o.tau2[label];
        if (type == "tau1_bar") return o.tau1_bar[label];
        return o.tau2_bar[label];
    };
    for (const RibbonCrossing& x : d.crossings) {
        const WilsonObject& over = d.colors[d.strands[x.over].color];
        int gu = d.colors[d.strands[x.under].color].g;
        tn.prefactor *= x.sign > 0 ? over.tau1[gu] : over.tau2[gu];
    }
    for (const RibbonSwitch& w : d.switches) {
        tn.prefactor *= phase_of(d.colors[d.strands[w.strand].color], w.type, w.label);
    }
    for (const RibbonStrand& s : d.strands) {
        if (s.writhe != 0) tn.prefactor *= int_pow(twist_left(d.colors[s.color]), s.writhe);
    }
    for (const RibbonCoupon& k : d.coupons) {
        // factor over the outs-then-ins variables, reordered to ascending ids
        std::vector<int> slots;
        for (int s : k.outs) slots.push_back(nfaces + s);
        for (int s : k.ins) slots.push_back(nfaces + s);
        TNFactor f;
        f.vars = slots;
        std::sort(f.vars.begin(), f.vars.end());
        f.provenance = "coupon";
        std::size_t total = 1;
        for (int v : f.vars) total *= static_cast<std::size_t>(tn.var_dim[v]);
        f.values.assign(total, cplx(0.0));
        std::vector<int> assign(slots.size(), 0);
        for (std::size_t src = 0; src < total; ++src) {
            // `assign` runs over the outs-then-ins odometer (slot order)
            std::size_t dst = 0;
            for (int v : f.vars) {
                std::size_t pos =
                    std::find(slots.begin(), slots.end(), v) - slots.begin();
                dst = dst * static_cast<std::size_t>(tn.var_dim[v]) + assign[pos];
            }
            f.values[dst] = k.matrix[src];
            for (int t = static_cast<int>(slots.size()) - 1; t >= 0; --t) {
                if (++assign[t] < tn.var_dim[slots[t]]) break;
                assign[t] = 0;
            }
        }
        tn.factors.push_back(std::move(f));
    }
    // the two extra weight insertions flanking each coupon
    for (int face : d.coupon_psi_face) {
        TNFactor f;
        f.vars = {face};
        f.provenance = "coupon-psi";
        for (int i = 0; i < n; ++i) f.values.push_back(d.datum.psi[i]);
        tn.factors.push_back(std::move(f));
    }
    return contract_scalar(tn, cap);
}

nlohmann::json random_omega_moves(const nlohmann::json& graph_doc, int nmoves, uint64_t seed) {
    nlohmann::json doc = graph_doc;
    std::mt19937_64 rng(seed);
    auto strands = [&]() -> nlohmann::json& { return doc["strands"]; };
    auto pick_thin_strand = [&]() -> int {
        std::vector<int> thin;
        for (std::size_t s = 0; s < strands().size(); ++s) {
            if (strands()[s].value("mult", 1) == 1) thin.push_back(static_cast<int>(s));
        }
        if (thin.empty()) return -1;
        return thin[rng() % thin.size()];
    };
    if (!doc.contains("crossings")) doc["crossings"] = nlohmann::json::array();
    if (!doc.contains("switches")) doc["switches"] = nlohmann::json::array();
    if (!doc.contains("coupons")) doc["coupons"] = nlohmann::json::array();
    int rank = doc.value("rank", 0);
    if (rank == 0 && !doc.value("colors", nlohmann::json::array()).empty()) {
        const auto& c0 = doc["colors"][0];
        rank = c0.contains("rank") ? c0["rank"].get<int>() : 0;
    }
    for (int step = 0; step < nmoves; ++step) {
        switch (rng() % 5) {
            case 0: {  // cancelling crossing pair
                int a = pick_thin_strand(), b = pick_thin_strand();
                if (a < 0 || b < 0) break;
                doc["crossings"].push_back({{"over", a}, {"under", b}, {"sign", 1}});
                doc["crossings"].push_back({{"over", a}, {"under", b}, {"sign", -1}});
                break;
            }
            case 1: {  // remove a cancelling crossing pair if one exists
                auto& xs = doc["crossings"];
                bool removed = false;
                for (std::size_t i = 0; i < xs.size() && !removed; ++i) {
                    for (std::size_t j = i + 1; j < xs.size() && !removed; ++j) {
                        if (xs[i]["over"] == xs[j]["over"] && xs[i]["under"] == xs[j]["under"] &&
                            xs[i].value("sign", 1) == -xs[j].value("sign", 1)) {
                            xs.erase(j);
                            xs.erase(i);
                            removed = true;
                        }
                    }
                }
                break;
            }
            case 2: {  // cancelling switch pair
                int s = pick_thin_strand();
                if (s < 0) break;
                int label = rank > 0 ? static_cast<int>(rng() % rank) : 0;
                doc["switches"].push_back({{"strand", s}, {"type", "tau1"}, {"label", label}});
                doc["switches"].push_back({{"strand", s}, {"type", "tau2"}, {"label", label}});
                break;
            }
            case 3: {  // shuffle the crossing list
                std::vector<nlohmann::json> xs = doc["crossings"].get<std::vector<nlohmann::json>>();
                std::shuffle(xs.begin(), xs.end(), rng);
                doc["crossings"] = xs;
                break;
            }
            case 4: {  // split a coupon through an identity coupon
                auto& ks = doc["coupons"];
                if (ks.empty() || doc["colors"].empty() || rank < 1) break;
                std::size_t ki = rng() % ks.size();
                nlohmann::json k = ks[ki];
                std::vector<int> ins = k.value("ins", std::vector<int>{});
                // intermediate strand: the tensor of the input colors
                WilsonObject mid = wilson_unit(std::max(rank, 1));
                int mult = 1;
                for (int s : ins) {
                    const auto& sd = doc["strands"][s];
                    const auto& cd = doc["colors"][sd["color"].get<int>()];
                    WilsonObject c = cd.contains("tau1")
                                         ? WilsonObject::from_json(cd)
                                         : center_object(mid.rank, cd.at("g").get<int>(),
                                                         cd.value("chi", 0));
                    mid = tensor_object(mid, c);
                    mult *= sd.value("mult", 1);
                }
                int color_id = static_cast<int>(doc["colors"].size());
                doc["colors"].push_back(mid.to_json());
                int new_strand = static_cast<int>(doc["strands"].size());
                doc["strands"].push_back(
                    {{"color", color_id}, {"mult", mult}, {"writhe", 0}, {"closed", false}});
                nlohmann::json ident = nlohmann::json::array();
                for (int r = 0; r < mult; ++r)
                    for (int c = 0; c < mult; ++c)
                        ident.push_back({r == c ? 1.0 : 0.0, 0.0});
                nlohmann::json first = {{"ins", ins},
                                        {"outs", {new_strand}},
                                        {"matrix", ident},
                                        {"face", k.value("face", 0)}};
                k["ins"] = {new_strand};
                ks[ki] = k;
                ks.push_back(first);
                break;
            }
        }
    }
    return doc;
}

}  // namespace otq
