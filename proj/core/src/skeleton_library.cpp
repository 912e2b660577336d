#include "otq/overlay.hpp"
#include "otq/skeleton.hpp"

#include <cstdio>

namespace otq {

// S^3 as two 3-balls glued along a sphere: two bodies, one chi=2 face, no
// lower strata. Both co-orientation bits are unconstrained local orders.
Skeleton make_s3_two_balls() {
    Skeleton sk;
    sk.id = "s3_two_balls";
    sk.bodies.resize(2);
    Face f;
    f.s0 = 0;
    f.s1 = 1;
    f.chi = 2;
    sk.faces.push_back(f);
    sk.require_valid();
    return sk;
}

// L(p,1) from two solid tori V1, V2 glued along a torus. The torus carries a
// meridian disc boundary c1 of V1 and a (1,p) curve c2 bounding the meridian
// disc of V2; they cross transversely in p points P_0..P_{p-1}. Strata:
//   bodies: B1 = V1 minus its meridian disc, B2 = V2 minus its (both balls)
//   faces:  D1 (meridian disc of V1, both sides in B1), D2 (same for V2),
//           F_0..F_{p-1} (the parallelogram regions of the torus between the
//           curves, side 0 in B1, side 1 in B2)
//   edges:  a_m (arc of c1 from P_m to P_{m+1}), b_m (arc of c2)
//   vertices: the crossings P_m.
// p = 1 yields S^3 with circle strata replaced by loops at the single crossing.
Skeleton make_lens(int p) {
    if (p < 1) throw validation_error("lens space parameter must be >= 1");
    Skeleton sk;
    sk.id = "lens(" + std::to_string(p) + ")";
    sk.bodies.resize(2);  // B1 = 0, B2 = 1
    const int B1 = 0, B2 = 1;
    const int D1 = 0, D2 = 1;
    auto F = [&](int m) { return 2 + ((m % p) + p) % p; };
    sk.faces.push_back(Face{B1, B1, 1, 0, Boundary::none});
    sk.faces.push_back(Face{B2, B2, 1, 0, Boundary::none});
    for (int m = 0; m < p; ++m) sk.faces.push_back(Face{B1, B2, 1, 0, Boundary::none});
    auto A = [&](int m) { return ((m % p) + p) % p; };      // edge id of a_m
    auto Bm = [&](int m) { return p + ((m % p) + p) % p; };  // edge id of b_m
    for (int m = 0; m < p; ++m) {
        Edge a;
        a.sector = {B2, B1, B1};
        a.wall = {Wall{F(m - 1), true}, Wall{D1, false}, Wall{F(m), false}};
        a.end0 = m;
        a.end1 = (m + 1) % p;
        sk.edges.push_back(a);
    }
    for (int m = 0; m < p; ++m) {
        Edge b;
        b.sector = {B1, B2, B2};
        b.wall = {Wall{F(m), false}, Wall{D2, false}, Wall{F(m - 1), true}};
        b.end0 = m;
        b.end1 = (m + 1) % p;
        sk.edges.push_back(b);
    }
    for (int m = 0; m < p; ++m) {
        Vertex v;
        // positions 0,1 lie in B1 (the two quadrants of V1 at the crossing),
        // positions 2,3 in B2; the arrangement is positively oriented.
        v.sector = {B1, B1, B2, B2};
        v.wall[pair_index(0, 1)] = {D1, true};
        v.wall[pair_index(0, 2)] = {F(m), false};
        v.wall[pair_index(0, 3)] = {F(m - 1), false};
        v.wall[pair_index(1, 2)] = {F(m - 1), false};
        v.wall[pair_index(1, 3)] = {F(m - 2), false};
        v.wall[pair_index(2, 3)] = {D2, false};
        v.germ[0] = {A(m), {2, 1, 0}};      // a_m leaving P_m
        v.germ[1] = {A(m - 1), {3, 1, 0}};  // a_{m-1} arriving at P_m
        v.germ[2] = {Bm(m), {0, 2, 3}};     // b_m leaving P_m
        v.germ[3] = {Bm(m - 1), {1, 2, 3}};  // b_{m-1} arriving at P_m
        sk.vertices.push_back(v);
    }
    sk.require_valid();
    return sk;
}

Skeleton make_s3_torus_halves() {
    Skeleton sk = make_lens(1);
    sk.id = "s3_torus_halves";
    return sk;
}

// S^2 x S^1 from a middle sphere and one spiralling annular wall: the wall
// leaves the middle sphere at a circle C, runs once around the S^1 factor and
// returns at a parallel pushoff C'. The sphere splits into a cap p inside C,
// an annulus m between the circles, and a cap q outside C'; the two bodies
// (inside and outside the spiralling column) are balls.
Skeleton make_s2xs1_product() {
    Skeleton sk;
    sk.id = "s2xs1_product";
    sk.bodies.resize(2);  // 0 = inside the column, 1 = outside
    const int Bin = 0, Bout = 1;
    const int P = 0, M = 1, Q = 2, W = 3;
    sk.faces.push_back(Face{Bin, Bin, 1, 0, Boundary::none});    // cap p
    sk.faces.push_back(Face{Bout, Bin, 0, 0, Boundary::none});   // annulus m
    sk.faces.push_back(Face{Bout, Bout, 1, 0, Boundary::none});  // cap q
    sk.faces.push_back(Face{Bin, Bout, 0, 0, Boundary::none});   // wall W
    Edge c;  // the circle C on the middle sphere
    c.sector = {Bin, Bout, Bin};
    c.wall = {Wall{W, false}, Wall{M, false}, Wall{P, true}};
    c.end0 = c.end1 = kCircle;
    c.chi = 0;
    sk.edges.push_back(c);
    Edge cp;  // the pushoff circle C'
    cp.sector = {Bout, Bout, Bin};
    cp.wall = {Wall{Q, false}, Wall{W, true}, Wall{M, true}};
    cp.end0 = cp.end1 = kCircle;
    cp.chi = 0;
    sk.edges.push_back(cp);
    sk.require_valid();
    return sk;
}

Skeleton library_skeleton(const std::string& name) {
    if (name == "s3_two_balls") return make_s3_two_balls();
    if (name == "s3_torus_halves") return make_s3_torus_halves();
    if (name == "s2xs1_product") return make_s2xs1_product();
    if (name == "t3_dual") return make_t3_dual();
    int p = 0;
    if (std::sscanf(name.c_str(), "lens(%d)", &p) == 1) return make_lens(p);
    if (name.rfind("cylinder(", 0) == 0) return make_cylinder_skeleton(name);
    throw validation_error("unknown library skeleton: " + name);
}

}  // namespace otq
