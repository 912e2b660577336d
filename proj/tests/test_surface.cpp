#include <doctest.h>

#include "otq/surface.hpp"

using namespace otq;

TEST_CASE("library surface skeleta validate with correct euler characteristic") {
    for (const std::string name : {"s2_circle", "s2_theta"}) {
        SurfaceSkeleton ss = library_surface(name);
        CHECK(ss.validate().empty());
        CHECK(ss.euler_alternating() == 2);
    }
    SurfaceSkeleton t2 = library_surface("t2_theta");
    CHECK(t2.validate().empty());
    CHECK(t2.euler_alternating() == 0);
    CHECK_THROWS_AS(library_surface("bogus"), validation_error);
}

TEST_CASE("surface order solving") {
    SurfaceSkeleton circ = library_surface("s2_circle");
    CHECK(solve_surface_order(circ).size() == 2);

    SurfaceSkeleton theta = library_surface("s2_theta");
    auto sols = solve_surface_order(theta);
    // total orders on the three lune faces: 2^3 assignments minus the two
    // cyclic tournaments at each trivalent point
    CHECK(sols.size() == 6);
    for (const auto& s : sols) CHECK(surface_order_admissible(theta, s));

    SurfaceSkeleton t2 = library_surface("t2_theta");
    CHECK(!solve_surface_order(t2).empty());
}

TEST_CASE("surface json round trip") {
    for (const std::string name : {"s2_circle", "s2_theta", "t2_theta"}) {
        SurfaceSkeleton ss = library_surface(name);
        SurfaceSkeleton back = SurfaceSkeleton::from_json(ss.to_json());
        CHECK(back.validate().empty());
        CHECK(back.to_json() == ss.to_json());
    }
}

TEST_CASE("surface isomorphism is invariant under relabeling") {
    SurfaceSkeleton theta = library_surface("s2_theta");
    CHECK(surface_isomorphic(theta, theta));

    // relabel: swap edges 0 and 1 everywhere
    SurfaceSkeleton perm = theta;
    std::swap(perm.edges[0], perm.edges[1]);
    for (auto& v : perm.vertices)
        for (auto& g : v.germ) g.edge = g.edge == 0 ? 1 : (g.edge == 1 ? 0 : g.edge);
    CHECK(perm.validate().empty());
    CHECK(surface_isomorphic(theta, perm));

    CHECK(!surface_isomorphic(theta, library_surface("t2_theta")));
    CHECK(!surface_isomorphic(theta, library_surface("s2_circle")));
    CHECK(surface_isomorphic(library_surface("t2_theta"), library_surface("t2_theta")));
    CHECK(surface_isomorphic(library_surface("s2_circle"), library_surface("s2_circle")));
}

TEST_CASE("boundary skeleton of a closed 3-skeleton is empty") {
    Skeleton sk = library_skeleton("lens(2)");
    for (Boundary b : {Boundary::in, Boundary::out}) {
        SurfaceSkeleton ss = boundary_skeleton(sk, b);
        CHECK(ss.faces.empty());
        CHECK(ss.edges.empty());
        CHECK(ss.vertices.empty());
    }
}
