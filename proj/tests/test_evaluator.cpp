#include <doctest.h>

#include <cmath>
#include <fstream>

#include "otq/evaluator.hpp"
#include "otq/moves.hpp"

using namespace otq;

static std::string fix(const std::string& rel) { return std::string(FIXTURES_DIR) + "/" + rel; }

static OrbifoldDatum load_datum(const std::string& name) {
    return datum_from_spherical(FusionCategory::load_file(fix("categories/" + name + ".json")));
}

static cplx eval_first(const Skeleton& sk, const OrbifoldDatum& d) {
    SolveOptions first;
    first.first_only = true;
    auto orders = solve_local_order(sk, first);
    REQUIRE(!orders.empty());
    return evaluate_closed(sk, orders[0], d);
}

TEST_CASE("the 3-sphere invariant is 1 over the global dimension, on every presentation") {
    Skeleton five_tet = dual_of_triangulation(
        nlohmann::json::parse(std::ifstream(fix("triangulations/five_tet_s3.json"))));
    for (const char* name : {"trivial", "vec_z2", "vec_z2_semion", "vec_z3", "vec_z4", "vec_z5",
                             "fibonacci", "ising"}) {
        auto d = load_datum(name);
        double expected = 1.0 / d.cat.global_dim_sq();
        cplx z1 = eval_first(make_s3_two_balls(), d);
        cplx z2 = eval_first(make_s3_torus_halves(), d);
        cplx z3 = eval_first(five_tet, d);
        INFO(name);
        CHECK(std::abs(z1 - cplx(expected)) < 1e-9);
        CHECK(std::abs(z1 - z2) < 1e-9);
        CHECK(std::abs(z1 - z3) < 1e-9);
        CHECK(std::abs(z2 - z3) < 1e-9);
    }
}

TEST_CASE("the invariant of the sphere-times-circle counts one state") {
    for (const char* name : {"trivial", "vec_z2", "vec_z3", "fibonacci", "ising"}) {
        INFO(name);
        CHECK(std::abs(eval_first(make_s2xs1_product(), load_datum(name)) - cplx(1.0)) < 1e-9);
    }
}

TEST_CASE("lens space values") {
    auto check = [&](const char* cat, int p, double expected) {
        INFO(cat, " lens(", p, ")");
        CHECK(std::abs(eval_first(make_lens(p), load_datum(cat)) - cplx(expected)) < 1e-9);
    };
    check("vec_z2", 1, 0.5);
    check("vec_z2", 2, 1.0);
    check("vec_z2", 3, 0.5);
    check("vec_z3", 2, 1.0 / 3.0);
    check("vec_z3", 3, 1.0);
    check("fibonacci", 2, (5.0 + std::sqrt(5.0)) / 10.0);
    check("fibonacci", 3, (5.0 + std::sqrt(5.0)) / 10.0);
    check("ising", 2, (2.0 + std::sqrt(2.0)) / 4.0);
    check("vec_z2_semion", 2, 0.0);
}

TEST_CASE("greedy contraction agrees with the brute-force sum") {
    SolveOptions first;
    first.first_only = true;
    for (const char* cat : {"vec_z3", "fibonacci"}) {
        auto d = load_datum(cat);
        for (const Skeleton& sk : {make_s3_two_balls(), make_lens(2)}) {
            auto bits = solve_local_order(sk, first)[0];
            TensorNetwork tn = foamify(decorate(sk, bits, d));
            cplx greedy = contract_scalar(tn);
            cplx brute = brute_force(tn).values[0];  // includes the network prefactor
            INFO(cat, " ", sk.id);
            CHECK(std::abs(greedy - brute) < 1e-10);
        }
    }
}

TEST_CASE("the invariant is unchanged under random rewrite walks") {
    SolveOptions first;
    first.first_only = true;
    for (const char* cat : {"vec_z2", "fibonacci"}) {
        auto d = load_datum(cat);
        for (const Skeleton& sk : {make_s3_two_balls(), make_lens(2)}) {
            auto bits = solve_local_order(sk, first)[0];
            cplx base = evaluate_closed(sk, bits, d);
            WalkResult walk = random_walk(sk, bits, 20, 7);
            cplx moved = evaluate_closed(walk.sk, walk.bits, d);
            INFO(cat, " ", sk.id);
            CHECK(std::abs(base - moved) < 1e-8);
        }
    }
}

TEST_CASE("closed evaluation rejects bordisms") {
    auto d = load_datum("vec_z2");
    Skeleton sk = library_skeleton("cylinder(s2_parallel)");
    SolveOptions first;
    first.first_only = true;
    auto bits = solve_local_order(sk, first)[0];
    CHECK_THROWS_AS(evaluate_closed(sk, bits, d), validation_error);
}
