#include "otq/network.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

namespace otq {

namespace {

// Sparse factor: only nonzero entries are stored, keyed by the assignment of
// the factor's variables (ascending var order). std::map keeps iteration
// deterministic, so contraction results are bitwise reproducible.
struct SFactor {
    std::vector<int> vars;  // ascending, distinct
    std::map<std::vector<uint8_t>, cplx> items;
};

std::size_t size_of(const std::vector<int>& vars, const std::vector<int>& dim) {
    std::size_t s = 1;
    for (int v : vars) s *= static_cast<std::size_t>(dim[v]);
    return s;
}

// overflow-safe size for cap comparisons
double size_of_d(const std::vector<int>& vars, const std::vector<int>& dim) {
    double s = 1.0;
    for (int v : vars) s *= static_cast<double>(dim[v]);
    return s;
}

// Sum the given (sorted) variables out of a single factor.
SFactor marginalize(const SFactor& f, const std::vector<int>& drop) {
    SFactor out;
    std::vector<std::size_t> keep_pos;
    for (std::size_t i = 0; i < f.vars.size(); ++i) {
        if (!std::binary_search(drop.begin(), drop.end(), f.vars[i])) {
            keep_pos.push_back(i);
            out.vars.push_back(f.vars[i]);
        }
    }
    for (const auto& [key, val] : f.items) {
        std::vector<uint8_t> nk;
        nk.reserve(keep_pos.size());
        for (std::size_t p : keep_pos) nk.push_back(key[p]);
        out.items[nk] += val;
    }
    return out;
}

// Within every live factor, sum out non-open variables that no other factor
// touches; doing this eagerly keeps the joins small.
void sweep_private(std::vector<SFactor>& live, const std::set<int>& open) {
    std::map<int, int> count;
    for (const auto& f : live)
        for (int v : f.vars)
            if (!open.count(v)) count[v]++;
    for (auto& f : live) {
        std::vector<int> drop;
        for (int v : f.vars)
            if (!open.count(v) && count[v] == 1) drop.push_back(v);
        if (!drop.empty()) f = marginalize(f, drop);
    }
}

// Hash join of two sparse factors on their shared variables. Throws when the
// merged factor would store more than `cap` entries.
SFactor join2(const SFactor& a, const SFactor& b, std::size_t cap) {
    std::vector<int> shared, uni;
    std::set_intersection(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                          std::back_inserter(shared));
    std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                   std::back_inserter(uni));
    std::vector<std::size_t> a_shared, b_shared, b_rest;
    for (std::size_t i = 0; i < a.vars.size(); ++i)
        if (std::binary_search(shared.begin(), shared.end(), a.vars[i])) a_shared.push_back(i);
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
        if (std::binary_search(shared.begin(), shared.end(), b.vars[i])) b_shared.push_back(i);
        else b_rest.push_back(i);
    }
    // each union position is filled either from a's key or from b's non-shared key
    struct Src {
        bool from_a;
        std::size_t pos;
    };
    std::vector<Src> src;
    for (int v : uni) {
        auto it = std::lower_bound(a.vars.begin(), a.vars.end(), v);
        if (it != a.vars.end() && *it == v) {
            src.push_back({true, static_cast<std::size_t>(it - a.vars.begin())});
        } else {
            std::size_t k = 0;
            while (b.vars[b_rest[k]] != v) ++k;
            src.push_back({false, k});
        }
    }
    std::map<std::vector<uint8_t>, std::vector<std::pair<std::vector<uint8_t>, cplx>>> index;
    for (const auto& [key, val] : b.items) {
        std::vector<uint8_t> sk, rk;
        sk.reserve(b_shared.size());
        rk.reserve(b_rest.size());
        for (std::size_t p : b_shared) sk.push_back(key[p]);
        for (std::size_t p : b_rest) rk.push_back(key[p]);
        index[sk].emplace_back(std::move(rk), val);
    }
    SFactor out;
    out.vars = uni;
    std::vector<uint8_t> sk, nk(uni.size());
    for (const auto& [akey, aval] : a.items) {
        sk.clear();
        for (std::size_t p : a_shared) sk.push_back(akey[p]);
        auto hit = index.find(sk);
        if (hit == index.end()) continue;
        for (const auto& [rk, bval] : hit->second) {
            for (std::size_t i = 0; i < uni.size(); ++i)
                nk[i] = src[i].from_a ? akey[src[i].pos] : rk[src[i].pos];
            out.items[nk] += aval * bval;
            if (out.items.size() > cap) {
                throw tolerance_error("contraction intermediate exceeds the size cap");
            }
        }
    }
    return out;
}

}  // namespace

double labeling_count(const TensorNetwork& tn) {
    double c = 1.0;
    for (int d : tn.var_dim) c *= d;
    return c;
}

DenseTensor contract(const TensorNetwork& tn, std::size_t cap) {
    const auto& dim = tn.var_dim;
    std::vector<SFactor> live;
    std::set<int> touched;
    for (const auto& f : tn.factors) {
        if (!std::is_sorted(f.vars.begin(), f.vars.end()) ||
            std::adjacent_find(f.vars.begin(), f.vars.end()) != f.vars.end()) {
            throw validation_error("factor variables must be distinct and ascending");
        }
        if (f.values.size() != size_of(f.vars, dim)) {
            throw validation_error("factor value count does not match its variable domains");
        }
        for (int v : f.vars) {
            touched.insert(v);
            if (dim[v] > 256) {
                throw validation_error("variable domain too large for contraction keys");
            }
        }
        SFactor s;
        s.vars = f.vars;
        std::vector<uint8_t> key(f.vars.size(), 0);
        for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
            if (f.values[idx] != cplx(0.0)) s.items.emplace(key, f.values[idx]);
            for (int k = static_cast<int>(key.size()) - 1; k >= 0; --k) {
                if (++key[k] < dim[f.vars[k]]) break;
                key[k] = 0;
            }
        }
        live.push_back(std::move(s));
    }
    cplx scalar = tn.prefactor;
    std::set<int> open(tn.open_vars.begin(), tn.open_vars.end());
    // variables in no factor: open ones broadcast later; summed ones
    // contribute their domain size as a multiplicity
    for (int v = 0; v < static_cast<int>(dim.size()); ++v) {
        if (!touched.count(v) && !open.count(v)) scalar *= static_cast<double>(dim[v]);
    }

    sweep_private(live, open);
    while (live.size() > 1) {
        // choose the pair with the smallest estimated join, preferring pairs
        // that actually share a variable
        std::size_t bi = 0, bj = 1;
        double best = -1.0;
        bool best_shares = false;
        for (std::size_t i = 0; i < live.size(); ++i) {
            for (std::size_t j = i + 1; j < live.size(); ++j) {
                std::vector<int> sh;
                std::set_intersection(live[i].vars.begin(), live[i].vars.end(),
                                      live[j].vars.begin(), live[j].vars.end(),
                                      std::back_inserter(sh));
                bool shares = !sh.empty();
                double score = static_cast<double>(live[i].items.size()) *
                               static_cast<double>(live[j].items.size());
                if (best < 0.0 || (shares && !best_shares) ||
                    (shares == best_shares && score < best)) {
                    bi = i;
                    bj = j;
                    best = score;
                    best_shares = shares;
                }
            }
        }
        SFactor merged = join2(live[bi], live[bj], cap);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(bj));
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(bi));
        live.push_back(std::move(merged));
        sweep_private(live, open);
    }
    if (!live.empty()) {
        std::vector<int> drop;
        for (int v : live[0].vars)
            if (!open.count(v)) drop.push_back(v);
        if (!drop.empty()) live[0] = marginalize(live[0], drop);
    }

    std::vector<int> open_sorted(tn.open_vars.begin(), tn.open_vars.end());
    std::sort(open_sorted.begin(), open_sorted.end());
    open_sorted.erase(std::unique(open_sorted.begin(), open_sorted.end()), open_sorted.end());
    if (open_sorted.size() != tn.open_vars.size()) {
        throw validation_error("open variables must be distinct");
    }
    if (size_of_d(open_sorted, dim) > static_cast<double>(cap)) {
        throw tolerance_error("open output exceeds the size cap");
    }

    DenseTensor out;
    out.vars = tn.open_vars;
    for (int v : tn.open_vars) out.dims.push_back(dim[v]);
    out.values.assign(size_of(out.vars, dim), cplx(0.0));
    // positions of the final factor's variables within the requested order
    std::vector<std::size_t> key_pos;
    if (!live.empty()) {
        for (int v : live[0].vars) {
            auto it = std::find(tn.open_vars.begin(), tn.open_vars.end(), v);
            key_pos.push_back(static_cast<std::size_t>(it - tn.open_vars.begin()));
        }
    }
    std::vector<int> assign(tn.open_vars.size(), 0);
    std::vector<uint8_t> key(key_pos.size(), 0);
    for (std::size_t o = 0; o < out.values.size(); ++o) {
        cplx val = scalar;
        if (!live.empty()) {
            for (std::size_t i = 0; i < key_pos.size(); ++i)
                key[i] = static_cast<uint8_t>(assign[key_pos[i]]);
            auto it = live[0].items.find(key);
            val = it == live[0].items.end() ? cplx(0.0) : scalar * it->second;
        }
        out.values[o] = val;
        for (int k = static_cast<int>(assign.size()) - 1; k >= 0; --k) {
            if (++assign[k] < dim[tn.open_vars[k]]) break;
            assign[k] = 0;
        }
    }
    return out;
}

cplx contract_scalar(const TensorNetwork& tn, std::size_t cap) {
    if (!tn.open_vars.empty()) {
        throw validation_error("contract_scalar requires a closed network");
    }
    return contract(tn, cap).values.at(0);
}

DenseTensor brute_force(const TensorNetwork& tn, double max_labelings) {
    if (labeling_count(tn) > max_labelings) {
        throw tolerance_error("brute-force labeling count exceeds the configured limit");
    }
    const auto& dim = tn.var_dim;
    DenseTensor out;
    out.vars = tn.open_vars;
    for (int v : tn.open_vars) out.dims.push_back(dim[v]);
    std::size_t osize = 1;
    for (int d : out.dims) osize *= static_cast<std::size_t>(d);
    out.values.assign(osize, cplx(0.0));
    std::vector<int> assign(dim.size(), 0);
    for (;;) {
        cplx prod = tn.prefactor;
        for (const auto& f : tn.factors) {
            std::size_t idx = 0;
            for (int v : f.vars) idx = idx * static_cast<std::size_t>(dim[v]) + assign[v];
            prod *= f.values[idx];
        }
        std::size_t oidx = 0;
        for (int v : tn.open_vars) oidx = oidx * static_cast<std::size_t>(dim[v]) + assign[v];
        out.values[oidx] += prod;
        int k = static_cast<int>(dim.size()) - 1;
        while (k >= 0 && ++assign[k] == dim[k]) assign[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

}  // namespace otq
