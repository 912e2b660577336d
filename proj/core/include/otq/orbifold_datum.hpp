#pragma once

#include <string>
#include <vector>

#include "otq/fusion_data.hpp"

namespace otq {

// A special orbifold datum over a spherical fusion category: the bulk label
// is trivial, 2-strata carry simple objects, 1-strata carry the (0/1
// dimensional) fusion spaces, and the two oriented 0-stratum tensors are the
// normalized associator and its inverse. psi is a positive diagonal weight
// per simple label and phi a positive scalar; both enter evaluations through
// symmetric-Euler-characteristic exponents.

struct OrbifoldDatum {
    explicit OrbifoldDatum(FusionCategory c) : cat(std::move(c)) {}

    FusionCategory cat;
    int rank = 0;
    std::vector<cplx> a0_plus;   // rank^6, row-major (a,b,c,d,e,f)
    std::vector<cplx> a0_minus;  // same layout
    std::vector<double> psi;     // per simple label
    double phi = 1.0;

    // orient = +1 selects a0_plus, -1 selects a0_minus
    cplx a0(int orient, int a, int b, int c, int d, int e, int f) const;
    double psi_pow(int label, int chi_sym) const;
    nlohmann::json to_json() const;
};

// The canonical datum of a spherical fusion category:
//   a0+(a,b,c,d,e,f) = F(a,b,c,d,e,f) / (psi_e psi_f)
//   a0-(a,b,c,d,e,f) = Finv(a,b,c,d,f,e) / (psi_e psi_f)
//   psi_i = sqrt(d_i),  phi = 1 / sqrt(sum_i d_i^2)
OrbifoldDatum datum_from_spherical(const FusionCategory& cat);

struct AxiomResidual {
    std::string name;
    double residual = 0.0;
};

struct AxiomReport {
    std::vector<AxiomResidual> axioms;  // "O1" .. "O8"
    double max_residual() const;
};

// Checks the defining identities of a special orbifold datum. Every local
// rewrite pattern (all oriented pocket / collision / recombination variants)
// is realized inside a small closed host skeleton; both sides of the rewrite
// are contracted as tensor networks with the pattern-adjacent sheet labels
// held open, and the report records the maximum elementwise difference per
// axiom family. O8 additionally checks the four mutual-inverse contractions
// of a0+ and a0- directly.
AxiomReport check_O_axioms(const OrbifoldDatum& datum);

}  // namespace otq
