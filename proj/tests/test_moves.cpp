#include <doctest.h>

#include "otq/moves.hpp"

using namespace otq;

namespace {

LocalOrder first_order(const Skeleton& sk) {
    SolveOptions opts;
    opts.first_only = true;
    auto sols = solve_local_order(sk, opts);
    REQUIRE(!sols.empty());
    return sols[0];
}

std::vector<Skeleton> closed_fixtures() {
    return {make_s3_two_balls(), make_lens(1), make_lens(2), make_lens(3),
            make_s2xs1_product()};
}

const MoveKind kAllKinds[] = {MoveKind::B, MoveKind::Binv, MoveKind::L,
                              MoveKind::Linv, MoveKind::T, MoveKind::Tinv};

// round trip: apply `site`, then find an inverse-kind site of the same
// variant whose application is isomorphic to the original skeleton
bool round_trips(const Skeleton& sk, const LocalOrder& bits, const MoveSite& site,
                 MoveKind inverse_kind) {
    auto mid = apply_move(sk, bits, site);
    for (const auto& back : find_sites(mid.sk, mid.bits, inverse_kind)) {
        if (back.variant != site.variant) continue;
        auto res = apply_move(mid.sk, mid.bits, back);
        if (skeleton_isomorphic(res.sk, sk)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("oriented variant tables have the expected sizes") {
    CHECK(variant_count(MoveKind::B) == 3);
    CHECK(variant_count(MoveKind::Binv) == 3);
    CHECK(variant_count(MoveKind::L) == 9);
    CHECK(variant_count(MoveKind::Linv) == 9);
    CHECK(variant_count(MoveKind::T) == 20);
    CHECK(variant_count(MoveKind::Tinv) == 20);
    // round trip of the kind strings
    for (MoveKind k : kAllKinds) CHECK(move_kind_from_string(to_string(k)) == k);
}

TEST_CASE("the two-ball sphere skeleton admits only pocket insertions") {
    Skeleton sk = make_s3_two_balls();
    LocalOrder bits = first_order(sk);
    CHECK(find_sites(sk, bits, MoveKind::B).size() == 3);
    CHECK(find_sites(sk, bits, MoveKind::Binv).empty());
    CHECK(find_sites(sk, bits, MoveKind::L).empty());
    CHECK(find_sites(sk, bits, MoveKind::Linv).empty());
    CHECK(find_sites(sk, bits, MoveKind::T).empty());
    CHECK(find_sites(sk, bits, MoveKind::Tinv).empty());
}

TEST_CASE("every forward move site applies and preserves validity and euler") {
    for (const Skeleton& sk : closed_fixtures()) {
        CAPTURE(sk.id);
        LocalOrder bits = first_order(sk);
        for (MoveKind k : kAllKinds) {
            for (const MoveSite& site : find_sites(sk, bits, k)) {
                OrientedResult res = apply_move(sk, bits, site);  // throws on failure
                CHECK(res.sk.validate().empty());
                CHECK(orientation_admissible(res.sk, res.bits));
                CHECK(res.sk.euler_alternating() == sk.euler_alternating());
            }
        }
    }
}

TEST_CASE("stratum counts shift as expected under forward moves") {
    Skeleton sk = make_lens(2);
    LocalOrder bits = first_order(sk);

    auto lsites = find_sites(sk, bits, MoveKind::L);
    REQUIRE(!lsites.empty());
    auto lres = apply_move(sk, bits, lsites[0]);
    CHECK(lres.sk.faces.size() == sk.faces.size() + 2);
    CHECK(lres.sk.edges.size() == sk.edges.size() + 4);
    CHECK(lres.sk.vertices.size() == sk.vertices.size() + 2);
    CHECK(lres.sk.bodies.size() == sk.bodies.size());

    auto tsites = find_sites(sk, bits, MoveKind::T);
    REQUIRE(!tsites.empty());
    auto tres = apply_move(sk, bits, tsites[0]);
    CHECK(tres.sk.faces.size() == sk.faces.size() + 1);
    CHECK(tres.sk.edges.size() == sk.edges.size() + 2);
    CHECK(tres.sk.vertices.size() == sk.vertices.size() + 1);
    CHECK(tres.sk.bodies.size() == sk.bodies.size());

    auto bsites = find_sites(sk, bits, MoveKind::B);
    REQUIRE(!bsites.empty());
    auto bres = apply_move(sk, bits, bsites[0]);
    CHECK(bres.sk.faces.size() == sk.faces.size() + 2);
    CHECK(bres.sk.edges.size() == sk.edges.size() + 1);
    CHECK(bres.sk.bodies.size() == sk.bodies.size() + 1);
}

TEST_CASE("each move composed with its inverse returns an isomorphic skeleton") {
    SUBCASE("pocket on the two-ball skeleton") {
        Skeleton sk = make_s3_two_balls();
        LocalOrder bits = first_order(sk);
        for (const MoveSite& site : find_sites(sk, bits, MoveKind::B))
            CHECK(round_trips(sk, bits, site, MoveKind::Binv));
    }
    SUBCASE("pocket on a lens space with loop strata") {
        // lens(1) has loop 1-strata, so no collision or recombination sites
        Skeleton sk = make_lens(1);
        LocalOrder bits = first_order(sk);
        auto b = find_sites(sk, bits, MoveKind::B);
        REQUIRE(!b.empty());
        CHECK(round_trips(sk, bits, b[0], MoveKind::Binv));
    }
    SUBCASE("pocket, collision and recombination on lens spaces") {
        for (int p : {2, 3}) {
            Skeleton sk = make_lens(p);
            CAPTURE(p);
            LocalOrder bits = first_order(sk);
            auto b = find_sites(sk, bits, MoveKind::B);
            REQUIRE(!b.empty());
            CHECK(round_trips(sk, bits, b[0], MoveKind::Binv));
            auto l = find_sites(sk, bits, MoveKind::L);
            REQUIRE(!l.empty());
            CHECK(round_trips(sk, bits, l[0], MoveKind::Linv));
            auto t = find_sites(sk, bits, MoveKind::T);
            REQUIRE(!t.empty());
            CHECK(round_trips(sk, bits, t[0], MoveKind::Tinv));
        }
    }
}

TEST_CASE("skeleton isomorphism accepts relabelings and rejects distinct spaces") {
    Skeleton a = make_lens(2);
    CHECK(skeleton_isomorphic(a, a));
    CHECK(skeleton_isomorphic(a, make_lens(2)));
    CHECK(!skeleton_isomorphic(a, make_lens(3)));
    CHECK(!skeleton_isomorphic(a, make_s2xs1_product()));
    CHECK(skeleton_isomorphic(make_s3_two_balls(), make_s3_two_balls()));

    // relabel: swap the two vertices and fix all references
    Skeleton perm = a;
    std::swap(perm.vertices[0], perm.vertices[1]);
    auto fix = [](int& v) { v = v == 0 ? 1 : (v == 1 ? 0 : v); };
    for (auto& e : perm.edges) {
        if (e.end0 >= 0) fix(e.end0);
        if (e.end1 >= 0) fix(e.end1);
    }
    CHECK(perm.validate().empty());
    CHECK(skeleton_isomorphic(a, perm));
}

TEST_CASE("random walks replay deterministically") {
    Skeleton sk = make_lens(2);
    LocalOrder bits = first_order(sk);
    WalkResult walk = random_walk(sk, bits, 10, 42);
    CHECK(walk.log.size() == 10);
    CHECK(walk.sk.validate().empty());
    CHECK(orientation_admissible(walk.sk, walk.bits));

    WalkResult again = random_walk(sk, bits, 10, 42);
    CHECK(again.log == walk.log);
    CHECK(again.sk.to_json() == walk.sk.to_json());

    OrientedResult replayed = replay(sk, bits, walk.log);
    CHECK(replayed.sk.to_json() == walk.sk.to_json());
    CHECK(replayed.bits == walk.bits);

    std::string h = move_log_hash(walk.log);
    CHECK(!h.empty());
    CHECK(h == move_log_hash(again.log));
}

TEST_CASE("bigon insertion turns the circle sphere skeleton into the theta graph") {
    SurfaceSkeleton circ = library_surface("s2_circle");
    auto sites = find_surface_sites(circ, SurfaceMoveKind::b);
    REQUIRE(sites.size() == 2);
    SurfaceSkeleton theta = library_surface("s2_theta");
    for (const auto& site : sites) {
        SurfaceSkeleton got = apply_surface_move(circ, site);
        CHECK(got.validate().empty());
        CHECK(surface_isomorphic(got, theta));
    }
}

TEST_CASE("surface bigon moves invert each other") {
    for (const std::string name : {"s2_theta", "t2_theta"}) {
        SurfaceSkeleton ss = library_surface(name);
        CAPTURE(name);
        for (const auto& site : find_surface_sites(ss, SurfaceMoveKind::b)) {
            SurfaceSkeleton mid = apply_surface_move(ss, site);
            auto backs = find_surface_sites(mid, SurfaceMoveKind::binv);
            REQUIRE(!backs.empty());
            bool ok = false;
            for (const auto& back : backs)
                if (surface_isomorphic(apply_surface_move(mid, back), ss)) ok = true;
            CHECK(ok);
        }
    }
}

TEST_CASE("surface flips invert exactly and square to an isomorphism") {
    SurfaceSkeleton t2 = library_surface("t2_theta");
    auto sites = find_surface_sites(t2, SurfaceMoveKind::l);
    REQUIRE(!sites.empty());
    CHECK(find_surface_sites(t2, SurfaceMoveKind::linv).size() == sites.size());
    for (const auto& site : sites) {
        SurfaceSkeleton mid = apply_surface_move(t2, site);
        CHECK(mid.validate().empty());
        SurfaceMoveSite inv{SurfaceMoveKind::linv, site.anchors};
        SurfaceSkeleton back = apply_surface_move(mid, inv);
        CHECK(back.to_json() == t2.to_json());
        SurfaceSkeleton twice = apply_surface_move(mid, site);
        CHECK(surface_isomorphic(twice, t2));
    }
}
