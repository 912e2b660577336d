#include <doctest.h>

#include <cmath>

#include "otq/evaluator.hpp"

using namespace otq;

static std::string fix(const std::string& rel) { return std::string(FIXTURES_DIR) + "/" + rel; }

static OrbifoldDatum load_datum(const std::string& name) {
    return datum_from_spherical(FusionCategory::load_file(fix("categories/" + name + ".json")));
}

static cplx eval_first(const Skeleton& sk, const OrbifoldDatum& d) {
    SolveOptions first;
    first.first_only = true;
    return evaluate_closed(sk, solve_local_order(sk, first)[0], d);
}

TEST_CASE("cylinder skeleta validate with the expected strata") {
    struct Row {
        const char* kind;
        int bodies, faces, edges, vertices;
    };
    for (const Row& r : {Row{"s2_parallel", 4, 5, 2, 0}, Row{"s2_cross", 4, 6, 4, 2},
                         Row{"s2_cross_flip", 4, 6, 4, 2}, Row{"t2_theta", 2, 10, 14, 6},
                         Row{"t2_theta_flip", 2, 10, 14, 6}}) {
        CylinderSkeleton c = make_cylinder(r.kind);
        INFO(r.kind);
        CHECK(c.sk.validate().empty());
        CHECK(static_cast<int>(c.sk.bodies.size()) == r.bodies);
        CHECK(static_cast<int>(c.sk.faces.size()) == r.faces);
        CHECK(static_cast<int>(c.sk.edges.size()) == r.edges);
        CHECK(static_cast<int>(c.sk.vertices.size()) == r.vertices);
        CHECK(!solve_local_order(c.sk, {16, false}).empty());
        CHECK(c.bottom_wall.size() == c.bottom.edges.size());
        CHECK(c.top_wall.size() == c.top.edges.size());
    }
    Skeleton t3 = make_t3_dual();
    CHECK(t3.validate().empty());
    CHECK(t3.euler_alternating() == 0);
}

TEST_CASE("identity cylinders are idempotents with spectrum in {0,1}") {
    for (const char* cat : {"vec_z2", "vec_z3", "fibonacci", "ising"}) {
        auto d = load_datum(cat);
        for (const char* kind : {"s2_parallel", "t2_theta"}) {
            auto m = cylinder_map(make_cylinder(kind), d);
            INFO(cat, " ", kind);
            CHECK((m * m - m).cwiseAbs().maxCoeff() < 1e-9);
            CHECK_NOTHROW(state_space(make_cylinder(kind), d));
        }
    }
}

TEST_CASE("cylinder maps compose along matching boundaries") {
    for (const char* cat : {"vec_z2", "vec_z3", "fibonacci"}) {
        auto d = load_datum(cat);
        // sphere: circle -> transverse circle -> circle equals the identity cylinder
        auto P = cylinder_map(make_cylinder("s2_parallel"), d);
        auto A = cylinder_map(make_cylinder("s2_cross"), d);
        auto B = cylinder_map(make_cylinder("s2_cross_flip"), d);
        INFO(cat);
        CHECK((B * A - P).cwiseAbs().maxCoeff() < 1e-9);
        // torus: the isotopy cylinder and its reverse compose to the idempotent
        auto T = cylinder_map(make_cylinder("t2_theta"), d);
        auto Tf = cylinder_map(make_cylinder("t2_theta_flip"), d);
        CHECK((Tf * T - T).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("state space dimensions of the sphere and torus") {
    struct Row {
        const char* cat;
        int s2, t2;
    };
    for (const Row& r : {Row{"vec_z2", 1, 4}, Row{"vec_z3", 1, 9}, Row{"fibonacci", 1, 4},
                         Row{"ising", 1, 9}}) {
        auto d = load_datum(r.cat);
        INFO(r.cat);
        CHECK(state_space(make_cylinder("s2_parallel"), d).dimension == r.s2);
        CHECK(state_space(make_cylinder("t2_theta"), d).dimension == r.t2);
    }
}

TEST_CASE("traces of identity cylinders equal mapping-torus invariants") {
    for (const char* cat : {"vec_z2", "vec_z3", "fibonacci"}) {
        auto d = load_datum(cat);
        cplx trP = cylinder_map(make_cylinder("s2_parallel"), d).trace();
        cplx trT = cylinder_map(make_cylinder("t2_theta"), d).trace();
        INFO(cat);
        CHECK(std::abs(trP - eval_first(make_s2xs1_product(), d)) < 1e-9);
        CHECK(std::abs(trT - eval_first(make_t3_dual(), d)) < 1e-9);
    }
    // pointed categories: the torus-times-circle invariant counts rank^2 states
    CHECK(std::abs(eval_first(make_t3_dual(), load_datum("vec_z2")) - cplx(4.0)) < 1e-9);
    CHECK(std::abs(eval_first(make_t3_dual(), load_datum("vec_z3")) - cplx(9.0)) < 1e-9);
}

TEST_CASE("bordism maps compress through the projectors") {
    auto d = load_datum("vec_z2");
    auto cyl = make_cylinder("s2_parallel");
    StateSpace ss = state_space(cyl, d);
    auto m = bordism_map(cyl, d, ss, ss);
    CHECK((m - ss.projector).cwiseAbs().maxCoeff() < 1e-12);
}
