#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otq/evaluator.hpp"
#include "otq/orbifold_datum.hpp"

namespace otq {

// The ribbon category of line defects of a datum, at desk scale: objects are
// graded lines over a pointed datum, carrying the two crossing phase families
// tau1 / tau2 (one phase per bulk label) together with their stored
// pseudo-inverses. The defining identities (T1)-(T7) are checked numerically;
// object search is implemented for pointed data only, where the result is the
// familiar n^2-element center.

struct WilsonObject {
    int rank = 1;  // number of bulk labels n
    int g = 0;     // underlying grade
    std::vector<cplx> tau1, tau2;          // crossing phases per bulk label
    std::vector<cplx> tau1_bar, tau2_bar;  // stored pseudo-inverses

    nlohmann::json to_json() const;
    static WilsonObject from_json(const nlohmann::json& doc);
};

// The unit object: trivial grade, unitor crossings.
WilsonObject wilson_unit(int rank);

// A center object of the pointed category: grade g with character
// chi(h) = exp(2 pi i k h / n).
WilsonObject center_object(int rank, int g, int k);

// Brute-force solve of the defining identities over one-dimensional
// candidates (grade g, crossing phases drawn from n-th roots of unity);
// returns all n^2 solutions for a pointed datum with trivial cocycle.
std::vector<WilsonObject> center_objects_pointed(const OrbifoldDatum& datum);

// Residuals of the seven defining identities T1..T7 of a graded-phase object.
AxiomReport check_T_axioms(const OrbifoldDatum& datum, const WilsonObject& obj);

WilsonObject tensor_object(const WilsonObject& a, const WilsonObject& b);
WilsonObject dual_object(const WilsonObject& a);

// Braiding scalar c_{X,Y} of one-dimensional objects (tau1 of Y evaluated on
// the grade of X) and the two twist composites, which agree for valid objects.
cplx braiding(const WilsonObject& x, const WilsonObject& y);
cplx twist_left(const WilsonObject& x);
cplx twist_right(const WilsonObject& x);

// --- decorated ribbon diagrams ------------------------------------------------
// Diagram document schema (JSON):
//   colors:    [{"g":int,"chi":int} | full WilsonObject docs]
//   strands:   [{"color":int, "mult":int=1, "writhe":int=0, "closed":bool}]
//   crossings: [{"over":strand,"under":strand,"sign":+1|-1}]
//   coupons:   [{"ins":[strands],"outs":[strands],"matrix":[[re,im],...],"face":int=0}]
//   switches:  [{"strand":int,"type":"tau1|tau2|tau1_bar|tau2_bar","label":int,
//                "positive":bool=true}]
// A non-closed strand must leave exactly one coupon (as an out) and enter
// exactly one (as an in); closed strands touch no coupon. Coupon matrices are
// row-major (product of out multiplicities) x (product of in multiplicities).

struct RibbonStrand {
    int color = 0;
    int mult = 1;
    int writhe = 0;
    bool closed = true;
};

struct RibbonCrossing {
    int over = -1, under = -1;
    int sign = +1;
};

struct RibbonCoupon {
    std::vector<int> ins, outs;
    std::vector<cplx> matrix;  // row-major, outs-index major
    int face = 0;              // ambient sheet carrying the coupon
};

struct RibbonSwitch {
    int strand = -1;
    std::string type;  // tau1 | tau2 | tau1_bar | tau2_bar
    int label = 0;
    bool positive = true;
};

struct RibbonDiagramDecorated {
    Skeleton sk;
    LocalOrder bits;
    OrbifoldDatum datum;
    std::vector<WilsonObject> colors;
    std::vector<RibbonStrand> strands;
    std::vector<RibbonCrossing> crossings;
    std::vector<RibbonCoupon> coupons;
    std::vector<RibbonSwitch> switches;
    // weight ledgers: per-face / per-body exponents from the ambient skeleton
    // plus two extra entries per coupon (its outermost sheet components)
    std::vector<int> psi_exponent;
    std::vector<int> phi_exponent;
    std::vector<int> coupon_psi_face;  // one entry per extra insertion

    RibbonDiagramDecorated(Skeleton s, LocalOrder b, OrbifoldDatum d)
        : sk(std::move(s)), bits(std::move(b)), datum(std::move(d)) {}
};

// Parses, validates (switch positivity, coupon grading conservation, strand
// wiring) and decorates a diagram document over the given closed skeleton.
RibbonDiagramDecorated decorate_diagram(const Skeleton& sk, const nlohmann::json& graph_doc,
                                        const OrbifoldDatum& datum);

// Contracts the ambient skeleton network together with the plexus factors.
// An empty diagram reproduces evaluate_closed on the identical network.
cplx evaluate_graph(const RibbonDiagramDecorated& diagram, std::size_t cap = 10'000'000);

// n random value-preserving diagram rewrites (crossing-pair insertion and
// cancellation, switch-pair insertion and cancellation, coupon splitting,
// crossing-list shuffling); the result document evaluates identically.
nlohmann::json random_omega_moves(const nlohmann::json& graph_doc, int n, uint64_t seed);

}  // namespace otq
