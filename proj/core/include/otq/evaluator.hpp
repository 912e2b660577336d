#pragma once

#include <Eigen/Dense>

#include "otq/network.hpp"
#include "otq/orbifold_datum.hpp"
#include "otq/overlay.hpp"
#include "otq/skeleton.hpp"

namespace otq {

// An oriented admissible skeleton together with a datum and the cached
// weight exponents: each 2-stratum contributes psi^chi_sym(face) for its
// label, each 3-stratum the scalar phi^chi_sym(body).
struct DecoratedSkeleton {
    DecoratedSkeleton(Skeleton s, LocalOrder b, OrbifoldDatum d)
        : sk(std::move(s)), bits(std::move(b)), datum(std::move(d)) {}

    Skeleton sk;
    LocalOrder bits;
    OrbifoldDatum datum;
    std::vector<int> psi_exponent;  // per face
    std::vector<int> phi_exponent;  // per body
};

DecoratedSkeleton decorate(const Skeleton& sk, const LocalOrder& bits, const OrbifoldDatum& datum);

// Foamification: one label variable per 2-stratum (with its psi weight as a
// unary factor), one fusion-space indicator per 1-stratum, one a0 tensor per
// 0-stratum (orientation-selected), phi weights folded into the prefactor.
// Faces listed in `open_faces` become open output variables.
TensorNetwork foamify(const DecoratedSkeleton& dsk, const std::vector<int>& open_faces = {});

// The closed-manifold invariant.
cplx evaluate_closed(const Skeleton& sk, const LocalOrder& bits, const OrbifoldDatum& datum,
                     std::size_t cap = 10'000'000);

// The cylinder map of a cylinder skeleton: a matrix from labelings of the
// bottom surface-skeleton edges to labelings of the top ones, each indexed
// row-major (edge 0 slowest).
Eigen::MatrixXcd cylinder_map(const CylinderSkeleton& cyl, const OrbifoldDatum& datum,
                              std::size_t cap = 10'000'000);

struct StateSpace {
    int dimension = 0;
    Eigen::MatrixXcd projector;  // the cylinder idempotent itself
};

// State space of the surface presented by an identity cylinder (bottom and
// top carry the same surface skeleton). Eigenvalues of the cylinder map are
// snapped to {0,1} at tolerance `snap_tol`; a value farther away than that
// signals a broken datum and raises tolerance_error.
StateSpace state_space(const CylinderSkeleton& cyl, const OrbifoldDatum& datum,
                       double snap_tol = 1e-6, std::size_t cap = 10'000'000);

// Projector-compressed bordism map: out.projector * cylinder_map * in.projector.
Eigen::MatrixXcd bordism_map(const CylinderSkeleton& cyl, const OrbifoldDatum& datum,
                             const StateSpace& in_space, const StateSpace& out_space,
                             std::size_t cap = 10'000'000);

}  // namespace otq
