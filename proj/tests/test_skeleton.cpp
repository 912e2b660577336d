#include <doctest.h>

#include <fstream>
#include <set>

#include "otq/skeleton.hpp"

using namespace otq;

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

}  // namespace

TEST_CASE("two-ball sphere decomposition validates and has exactly two orders") {
    Skeleton sk = make_s3_two_balls();
    CHECK(sk.validate().empty());
    CHECK(sk.euler_alternating() == 0);
    auto sols = solve_local_order(sk);
    CHECK(sols.size() == 2);
    for (const auto& s : sols) CHECK(orientation_admissible(sk, s));
}

TEST_CASE("lens skeleta validate with vanishing alternating euler sum") {
    for (int p = 1; p <= 5; ++p) {
        Skeleton sk = make_lens(p);
        CHECK(sk.validate().empty());
        CHECK(sk.euler_alternating() == 0);
        CHECK(sk.bodies.size() == 2);
        CHECK(sk.faces.size() == 2 + static_cast<size_t>(p));
        CHECK(sk.edges.size() == 2 * static_cast<size_t>(p));
        CHECK(sk.vertices.size() == static_cast<size_t>(p));
    }
}

TEST_CASE("torus-halves decomposition admits no global ordering of 2-strata") {
    // Faces with equal germ targets on both sides (the meridian discs) make a
    // single global co-orientation impossible, yet local orders exist.
    Skeleton sk = make_s3_torus_halves();
    CHECK(sk.validate().empty());
    bool has_self_paired_face = false;
    for (const auto& f : sk.faces)
        if (f.s0 == f.s1) has_self_paired_face = true;
    CHECK(has_self_paired_face);
    auto sols = solve_local_order(sk);
    CHECK(!sols.empty());
}

TEST_CASE("product skeleton of sphere times circle validates") {
    Skeleton sk = make_s2xs1_product();
    CHECK(sk.validate().empty());
    CHECK(sk.euler_alternating() == 0);
    auto sols = solve_local_order(sk);
    CHECK(!sols.empty());
}

TEST_CASE("local order solver respects cap and first-only options") {
    Skeleton sk = make_s3_two_balls();
    SolveOptions opt;
    opt.first_only = true;
    CHECK(solve_local_order(sk, opt).size() == 1);
    opt.first_only = false;
    opt.cap = 1;
    CHECK(solve_local_order(sk, opt).size() == 1);
}

TEST_CASE("circle strata with nontrivial monodromy admit no local order") {
    Skeleton sk = make_s2xs1_product();
    sk.edges[0].monodromy = 1;
    CHECK(solve_local_order(sk).empty());
    LocalOrder bits(sk.faces.size(), 0);
    CHECK(!orientation_admissible(sk, bits));
}

TEST_CASE("edge and vertex ranks are consistent permutations") {
    Skeleton sk = make_lens(3);
    auto sols = solve_local_order(sk);
    REQUIRE(!sols.empty());
    for (const auto& bits : sols) {
        for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e) {
            auto r = edge_ranks(sk, bits, e);
            std::set<int> ranks(r.begin(), r.end());
            CHECK(ranks == std::set<int>{0, 1, 2});
        }
        for (int v = 0; v < static_cast<int>(sk.vertices.size()); ++v) {
            auto r = vertex_ranks(sk, bits, v);
            std::set<int> ranks(r.begin(), r.end());
            CHECK(ranks == std::set<int>{0, 1, 2, 3});
            int s = vertex_sign(sk, bits, v);
            CHECK((s == 1 || s == -1));
        }
    }
}

TEST_CASE("skeleton json round trip preserves structure") {
    for (const std::string name : {"s3_two_balls", "lens(3)", "s2xs1_product"}) {
        Skeleton sk = library_skeleton(name);
        Skeleton back = Skeleton::from_json(sk.to_json());
        CHECK(back.validate().empty());
        CHECK(back.id == sk.id);
        CHECK(back.bodies.size() == sk.bodies.size());
        CHECK(back.faces.size() == sk.faces.size());
        CHECK(back.edges.size() == sk.edges.size());
        CHECK(back.vertices.size() == sk.vertices.size());
        CHECK(back.to_json() == sk.to_json());
    }
}

TEST_CASE("validator reports germ-level corruption") {
    Skeleton sk = make_lens(2);
    sk.vertices[0].wall[0].flip = !sk.vertices[0].wall[0].flip;
    CHECK(!sk.validate().empty());

    Skeleton sk2 = make_lens(2);
    sk2.edges[0].sector[1] = sk2.edges[0].sector[1] == 0 ? 1 : 0;
    CHECK(!sk2.validate().empty());

    Skeleton sk3 = make_s3_two_balls();
    sk3.bodies[0].is_ball_certified = false;
    CHECK(!sk3.validate().empty());
}

TEST_CASE("face boundary tracing closes up") {
    Skeleton sk = make_lens(2);
    // meridian disc of the first solid torus: boundary is the circle c1 made
    // of a_0, a_1 with two crossing corners
    auto cycles = trace_face_boundary(sk, 0);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].size() == 4);
    int runs = 0, corners = 0;
    for (const auto& it : cycles[0]) {
        if (it.kind == BoundaryItem::EdgeRun) runs++;
        else corners++;
    }
    CHECK(runs == 2);
    CHECK(corners == 2);

    Skeleton prod = make_s2xs1_product();
    auto circ = trace_face_boundary(prod, 0);  // cap bounded by the circle C
    REQUIRE(circ.size() == 1);
    CHECK(circ[0].size() == 1);
    CHECK(circ[0][0].kind == BoundaryItem::EdgeRun);
}

TEST_CASE("dual of the five-tetrahedron sphere triangulation") {
    auto doc = load_json(std::string(FIXTURES_DIR) + "/triangulations/five_tet_s3.json");
    Skeleton sk = dual_of_triangulation(doc);
    CHECK(sk.validate().empty());
    CHECK(sk.bodies.size() == 5);
    CHECK(sk.faces.size() == 10);
    CHECK(sk.edges.size() == 10);
    CHECK(sk.vertices.size() == 5);
    CHECK(sk.euler_alternating() == 0);
    // the ordering induced by vertex_order yields at least the all-zero solution
    LocalOrder zero(sk.faces.size(), 0);
    CHECK(orientation_admissible(sk, zero));
    auto sols = solve_local_order(sk);
    CHECK(!sols.empty());
}

TEST_CASE("triangulation rejections") {
    auto doc = load_json(std::string(FIXTURES_DIR) + "/triangulations/five_tet_s3.json");
    auto bad = doc;
    bad["vertex_order"] = {0, 1, 2, 3, 3};
    CHECK_THROWS_AS(dual_of_triangulation(bad), validation_error);

    auto bad2 = doc;
    std::swap(bad2["tetrahedra"][0][0], bad2["tetrahedra"][0][1]);  // breaks orientation
    CHECK_THROWS_AS(dual_of_triangulation(bad2), validation_error);
}

TEST_CASE("library lookup") {
    CHECK(library_skeleton("lens(4)").id == "lens(4)");
    CHECK_THROWS_AS(library_skeleton("nonsense"), validation_error);
}
