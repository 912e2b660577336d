#include "otq/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace otq {

namespace {

// Build a factor over the distinct variables appearing in `slot_vars`,
// evaluating `value` on the per-slot labels induced by each assignment.
TNFactor make_slot_factor(const std::vector<int>& slot_vars, int dim,
                          const std::function<cplx(const std::vector<int>&)>& value,
                          const std::string& provenance) {
    TNFactor f;
    f.vars = slot_vars;
    std::sort(f.vars.begin(), f.vars.end());
    f.vars.erase(std::unique(f.vars.begin(), f.vars.end()), f.vars.end());
    std::size_t total = 1;
    for (std::size_t i = 0; i < f.vars.size(); ++i) total *= static_cast<std::size_t>(dim);
    f.values.resize(total);
    f.provenance = provenance;
    std::vector<int> assign(f.vars.size(), 0);
    std::vector<int> labels(slot_vars.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        for (std::size_t s = 0; s < slot_vars.size(); ++s) {
            auto it = std::lower_bound(f.vars.begin(), f.vars.end(), slot_vars[s]);
            labels[s] = assign[it - f.vars.begin()];
        }
        f.values[idx] = value(labels);
        for (int k = static_cast<int>(assign.size()) - 1; k >= 0; --k) {
            if (++assign[k] < dim) break;
            assign[k] = 0;
        }
    }
    return f;
}

}  // namespace

DecoratedSkeleton decorate(const Skeleton& sk, const LocalOrder& bits, const OrbifoldDatum& datum) {
    sk.require_valid();
    if (!orientation_admissible(sk, bits)) {
        throw validation_error("skeleton order is not admissible");
    }
    DecoratedSkeleton d(sk, bits, datum);
    for (const Face& f : sk.faces) d.psi_exponent.push_back(chi_sym(f.chi, f.boundary_chi));
    for (const Body& b : sk.bodies) d.phi_exponent.push_back(chi_sym(b.chi, b.boundary_chi));
    return d;
}

TensorNetwork foamify(const DecoratedSkeleton& dsk, const std::vector<int>& open_faces) {
    const Skeleton& sk = dsk.sk;
    const OrbifoldDatum& datum = dsk.datum;
    const int n = datum.rank;
    TensorNetwork tn;
    tn.var_dim.assign(sk.faces.size(), n);
    tn.open_vars = open_faces;
    for (std::size_t f = 0; f < sk.faces.size(); ++f) {
        TNFactor w;
        w.vars = {static_cast<int>(f)};
        w.provenance = "face:" + std::to_string(f);
        for (int i = 0; i < n; ++i) w.values.push_back(datum.psi_pow(i, dsk.psi_exponent[f]));
        tn.factors.push_back(std::move(w));
    }
    for (std::size_t b = 0; b < sk.bodies.size(); ++b) {
        tn.prefactor *= std::pow(datum.phi, dsk.phi_exponent[b]);
    }
    for (std::size_t e = 0; e < sk.edges.size(); ++e) {
        const Edge& ed = sk.edges[e];
        auto rank = edge_ranks(sk, dsk.bits, static_cast<int>(e));
        // wall k sits between the sectors of ranks {rank[k], rank[k+1]}
        int face01 = -1, face12 = -1, face02 = -1;
        for (int k = 0; k < 3; ++k) {
            int lo = std::min(rank[k], rank[(k + 1) % 3]);
            int hi = std::max(rank[k], rank[(k + 1) % 3]);
            int fc = ed.wall[k].face;
            if (lo == 0 && hi == 1) face01 = fc;
            else if (lo == 1 && hi == 2) face12 = fc;
            else face02 = fc;
        }
        const FusionCategory& cat = datum.cat;
        tn.factors.push_back(make_slot_factor(
            {face01, face12, face02}, n,
            [&cat](const std::vector<int>& l) {
                return cplx(cat.fusion(l[0], l[1], l[2]) >= 1 ? 1.0 : 0.0);
            },
            "edge:" + std::to_string(e)));
    }
    for (std::size_t v = 0; v < sk.vertices.size(); ++v) {
        const Vertex& vx = sk.vertices[v];
        auto rank = vertex_ranks(sk, dsk.bits, static_cast<int>(v));
        int pos_of_rank[4];
        for (int p = 0; p < 4; ++p) pos_of_rank[rank[p]] = p;
        auto wall_face = [&](int ri, int rj) {
            int i = pos_of_rank[ri], j = pos_of_rank[rj];
            return vx.wall[pair_index(std::min(i, j), std::max(i, j))].face;
        };
        std::vector<int> slots = {wall_face(0, 1), wall_face(1, 2), wall_face(2, 3),
                                  wall_face(0, 3), wall_face(0, 2), wall_face(1, 3)};
        int sign = vertex_sign(sk, dsk.bits, static_cast<int>(v));
        const OrbifoldDatum& dd = datum;
        tn.factors.push_back(make_slot_factor(
            slots, n,
            [&dd, sign](const std::vector<int>& l) {
                return dd.a0(sign, l[0], l[1], l[2], l[3], l[4], l[5]);
            },
            "vertex:" + std::to_string(v)));
    }
    return tn;
}

cplx evaluate_closed(const Skeleton& sk, const LocalOrder& bits, const OrbifoldDatum& datum,
                     std::size_t cap) {
    for (const Face& f : sk.faces) {
        if (f.bdry != Boundary::none) {
            throw validation_error("evaluate_closed requires a closed skeleton");
        }
    }
    return contract_scalar(foamify(decorate(sk, bits, datum)), cap);
}

Eigen::MatrixXcd cylinder_map(const CylinderSkeleton& cyl, const OrbifoldDatum& datum,
                              std::size_t cap) {
    for (int w : cyl.bottom_wall) {
        if (std::find(cyl.top_wall.begin(), cyl.top_wall.end(), w) != cyl.top_wall.end()) {
            throw validation_error("cylinder_map requires an open cylinder");
        }
    }
    SolveOptions opts;
    opts.first_only = true;
    auto orders = solve_local_order(cyl.sk, opts);
    if (orders.empty()) throw validation_error("cylinder skeleton admits no orientation order");
    std::vector<int> open = cyl.top_wall;
    open.insert(open.end(), cyl.bottom_wall.begin(), cyl.bottom_wall.end());
    DenseTensor t = contract(foamify(decorate(cyl.sk, orders[0], datum), open), cap);
    const int n = datum.rank;
    auto dim_of = [&](const SurfaceSkeleton& ss) {
        std::size_t d = 1;
        for (std::size_t i = 0; i < ss.edges.size(); ++i) d *= static_cast<std::size_t>(n);
        return d;
    };
    const std::size_t rows = dim_of(cyl.top), cols = dim_of(cyl.bottom);
    Eigen::MatrixXcd m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = t.values[r * cols + c];
    return m;
}

StateSpace state_space(const CylinderSkeleton& cyl, const OrbifoldDatum& datum, double snap_tol,
                       std::size_t cap) {
    Eigen::MatrixXcd m = cylinder_map(cyl, datum, cap);
    if (m.rows() != m.cols()) {
        throw validation_error("state_space requires an identity cylinder");
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    StateSpace out;
    for (int i = 0; i < m.rows(); ++i) {
        cplx lam = es.eigenvalues()(i);
        if (std::abs(lam) <= snap_tol) continue;
        if (std::abs(lam - cplx(1.0)) <= snap_tol) {
            out.dimension++;
            continue;
        }
        throw tolerance_error("cylinder map has an eigenvalue away from {0,1}");
    }
    out.projector = std::move(m);
    return out;
}

Eigen::MatrixXcd bordism_map(const CylinderSkeleton& cyl, const OrbifoldDatum& datum,
                             const StateSpace& in_space, const StateSpace& out_space,
                             std::size_t cap) {
    return out_space.projector * cylinder_map(cyl, datum, cap) * in_space.projector;
}

}  // namespace otq
