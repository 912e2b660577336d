#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otq/common.hpp"

namespace otq {

// A factor-graph tensor network over integer label variables. Each variable
// ranges over 0..dim-1 (a simple-object label); hyperedges are realized as
// shared variable ids between factors. Factors store dense values in
// row-major order over their (distinct, sorted) variable list.

struct TNFactor {
    std::vector<int> vars;     // distinct variable ids, ascending
    std::vector<cplx> values;  // row-major over the vars' domains
    std::string provenance;    // originating stratum, for diagnostics
};

struct TensorNetwork {
    std::vector<int> var_dim;    // domain size per variable
    std::vector<int> open_vars;  // kept open; output index order
    std::vector<TNFactor> factors;
    cplx prefactor{1.0, 0.0};
};

// Dense result tensor over the network's open variables, row-major in
// open_vars order (scalar when there are none).
struct DenseTensor {
    std::vector<int> vars;
    std::vector<int> dims;
    std::vector<cplx> values;
};

// Exact contraction over sparse factors: zero entries are dropped, variables
// private to a single factor are summed out eagerly, and factors are merged
// pairwise by hash join, smallest estimated product first. Exploits the
// delta-like sparsity of fusion indicator factors. Throws tolerance_error
// when an intermediate would exceed `cap` stored entries. An empty network
// contracts to 1.
DenseTensor contract(const TensorNetwork& tn, std::size_t cap = 10'000'000);
cplx contract_scalar(const TensorNetwork& tn, std::size_t cap = 10'000'000);

// Product of all variable domain sizes (as double, to avoid overflow).
double labeling_count(const TensorNetwork& tn);

// Reference oracle: a single loop over every labeling of every variable.
// Throws tolerance_error when the labeling count exceeds `max_labelings`.
DenseTensor brute_force(const TensorNetwork& tn, double max_labelings = 1'000'000);

}  // namespace otq
