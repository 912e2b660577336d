#pragma once

#include <functional>
#include <string>
#include <vector>

#include "otq/common.hpp"

#include <json.hpp>

namespace otq {

// Worst pentagon instance: indices (a,b,c,d | total e) and the residual.
struct PentagonReport {
    double max_residual = 0.0;
    std::array<int, 5> worst_tuple{0, 0, 0, 0, 0};
};

// A spherical fusion category given by explicit structure constants.
// Immutable after construction; all accessors are const.
class FusionCategory {
  public:
    static FusionCategory from_json(const nlohmann::json& doc);
    static FusionCategory load_file(const std::string& path);
    nlohmann::json to_json() const;
    void save_file(const std::string& path) const;

    int rank() const { return static_cast<int>(simples_.size()); }
    const std::vector<std::string>& simples() const { return simples_; }
    int unit() const { return 0; }
    int dual(int a) const { return dual_[a]; }
    int fusion(int a, int b, int c) const { return n_[idx3(a, b, c)]; }
    double qdim(int a) const { return qdim_[a]; }
    double global_dim_sq() const { return global_dim_sq_; }
    bool multiplicity_free() const { return multiplicity_free_; }

    // F-symbol [F^{abc}_d]_{e,f}: change of basis from the ((ab)c) fusion tree
    // with inner charge e to the (a(bc)) tree with inner charge f.
    // Multiplicity-free access; throws if the category has multiplicities.
    cplx F(int a, int b, int c, int d, int e, int f) const;
    // Inverse block: [(F^{abc}_d)^{-1}]_{f,e}.
    cplx Finv(int a, int b, int c, int d, int f, int e) const;

    bool admissible_e(int a, int b, int c, int d, int e) const {
        return fusion(a, b, e) > 0 && fusion(e, c, d) > 0;
    }
    bool admissible_f(int a, int b, int c, int d, int f) const {
        return fusion(b, c, f) > 0 && fusion(a, f, d) > 0;
    }

    PentagonReport check_pentagon() const;

    bool operator==(const FusionCategory& other) const;

  private:
    FusionCategory() = default;
    void validate();
    void compute_inverses();
    size_t idx3(int a, int b, int c) const {
        int n = rank();
        return (static_cast<size_t>(a) * n + b) * n + c;
    }
    size_t idx6(int a, int b, int c, int d, int e, int f) const {
        int n = rank();
        return ((((static_cast<size_t>(a) * n + b) * n + c) * n + d) * n + e) * n + f;
    }

    std::vector<std::string> simples_;
    std::vector<int> dual_;
    std::vector<int> n_;
    std::vector<double> qdim_;
    double global_dim_sq_ = 0.0;
    bool multiplicity_free_ = true;
    std::vector<cplx> f_;      // dense 6-index storage (multiplicity-free)
    std::vector<cplx> finv_;   // per-block inverse, same indexing with (f,e) in the last slots

    friend FusionCategory pointed_category(int, const std::function<cplx(int, int, int)>&);
};

FusionCategory load_category(const nlohmann::json& doc);

// Vec_{Z/n} with a unit-normalized 3-cocycle (checked). Pass nullptr-like
// {} for the trivial cocycle.
FusionCategory pointed_category(int n, const std::function<cplx(int, int, int)>& cocycle = nullptr);

// The exponent-k standard 3-cocycle on Z/n: omega(a,b,c) = exp(2*pi*i*k*a*(b+c-[b+c])/n^2).
std::function<cplx(int, int, int)> standard_cocycle(int n, int k);

}  // namespace otq
