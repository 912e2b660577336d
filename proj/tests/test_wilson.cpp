#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "otq/wilson.hpp"

using namespace otq;

static std::string fix(const std::string& rel) { return std::string(FIXTURES_DIR) + "/" + rel; }

static OrbifoldDatum load_datum(const std::string& name) {
    return datum_from_spherical(FusionCategory::load_file(fix("categories/" + name + ".json")));
}

static nlohmann::json load_json(const std::string& rel) {
    std::ifstream in(fix(rel));
    return nlohmann::json::parse(in);
}

TEST_CASE("the pointed center has exactly n^2 objects passing every identity") {
    for (const char* name : {"trivial", "vec_z2", "vec_z3"}) {
        auto d = load_datum(name);
        auto objs = center_objects_pointed(d);
        INFO(name);
        CHECK(static_cast<int>(objs.size()) == d.rank * d.rank);
        for (const auto& o : objs) {
            CHECK(check_T_axioms(d, o).max_residual() < 1e-10);
            CHECK(std::abs(twist_left(o) - twist_right(o)) < 1e-10);
            // phases are n-th roots of unity
            for (const cplx& z : o.tau1) {
                cplx p(1.0);
                for (int i = 0; i < d.rank; ++i) p *= z;
                CHECK(std::abs(p - cplx(1.0)) < 1e-10);
            }
        }
    }
}

TEST_CASE("a perturbed crossing phase is detected") {
    auto d = load_datum("vec_z3");
    WilsonObject o = center_object(3, 1, 1);
    o.tau1.back() *= std::polar(1.0, 0.01);
    auto report = check_T_axioms(d, o);
    CHECK(report.axioms[3].residual > 1e-3);  // the tau1 pseudo-inverse identity
    CHECK(report.max_residual() > 1e-3);
}

TEST_CASE("tensor, dual, braiding and twist follow the phase arithmetic") {
    auto d = load_datum("vec_z3");
    WilsonObject a = center_object(3, 1, 2), b = center_object(3, 2, 1);
    WilsonObject ab = tensor_object(a, b);
    CHECK(ab.g == 0);
    CHECK(check_T_axioms(d, ab).max_residual() < 1e-10);
    CHECK(check_T_axioms(d, dual_object(a)).max_residual() < 1e-10);
    // unit laws
    WilsonObject au = tensor_object(a, wilson_unit(3));
    for (int h = 0; h < 3; ++h) CHECK(std::abs(au.tau1[h] - a.tau1[h]) < 1e-14);
    // braiding c_{X,Y} = chi_Y(g_X) and twist = chi_X(g_X)
    cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    CHECK(std::abs(braiding(a, b) - std::pow(omega, 1 * 1)) < 1e-12);
    CHECK(std::abs(twist_left(a) - std::pow(omega, 2 * 1)) < 1e-12);
    // braiding against the inverse braiding is the identity scalar
    CHECK(std::abs(braiding(a, b) * std::conj(braiding(a, b)) - cplx(1.0)) < 1e-12);
}

TEST_CASE("unknot and Hopf link match the phase-product oracle") {
    auto d2 = load_datum("vec_z2");
    Skeleton host = make_s3_two_balls();
    // unknot colored (g=1, chi=1) over Z/2: qdim 1 times the sphere invariant
    auto unknot = decorate_diagram(host, load_json("graphs/unknot.json"), d2);
    CHECK(std::abs(evaluate_graph(unknot) - cplx(0.5)) < 1e-9);
    // Hopf link colored (1,1) and (1,0): (1/n) chi_X(g_Y) chi_Y(g_X) = -1/2
    auto hopf = decorate_diagram(host, load_json("graphs/hopf.json"), d2);
    CHECK(std::abs(evaluate_graph(hopf) - cplx(-0.5)) < 1e-9);
    // the same links over Z/3 with explicit colors
    auto d3 = load_datum("vec_z3");
    nlohmann::json doc = load_json("graphs/hopf.json");
    doc["rank"] = 3;
    doc["colors"] = {{{"g", 1}, {"chi", 2}}, {{"g", 2}, {"chi", 1}}};
    cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    cplx oracle = (1.0 / 3.0) * std::pow(omega, 2 * 2) * std::pow(omega, 1 * 1);
    CHECK(std::abs(evaluate_graph(decorate_diagram(host, doc, d3)) - oracle) < 1e-9);
}

TEST_CASE("the empty diagram reproduces the closed invariant bitwise") {
    for (const char* cat : {"vec_z2", "fibonacci"}) {
        auto d = load_datum(cat);
        Skeleton host = make_s3_two_balls();
        auto empty = decorate_diagram(host, nlohmann::json::object(), d);
        cplx via_graph = evaluate_graph(empty);
        cplx via_closed = evaluate_closed(host, empty.bits, d);
        INFO(cat);
        CHECK(via_graph.real() == via_closed.real());
        CHECK(via_graph.imag() == via_closed.imag());
    }
}

TEST_CASE("random diagram rewrites preserve the evaluation") {
    auto d = load_datum("vec_z3");
    Skeleton host = make_s3_two_balls();
    nlohmann::json doc = load_json("graphs/hopf.json");
    doc["rank"] = 3;
    doc["colors"] = {{{"g", 1}, {"chi", 2}}, {{"g", 2}, {"chi", 1}}};
    cplx base = evaluate_graph(decorate_diagram(host, doc, d));
    nlohmann::json moved = random_omega_moves(doc, 50, 42);
    CHECK(std::abs(evaluate_graph(decorate_diagram(host, moved, d)) - base) < 1e-8);
}

TEST_CASE("stacked coupons evaluate like their composite") {
    auto d = load_datum("vec_z2");
    Skeleton host = make_s3_two_balls();
    // two width-2 strands through one coupon (the composite) versus a chain
    // of two coupons joined by an intermediate strand
    auto mat = [](std::initializer_list<double> re) {
        nlohmann::json arr = nlohmann::json::array();
        for (double r : re) arr.push_back({r, 0.0});
        return arr;
    };
    // f: 2 -> 2, g: 2 -> 2, evaluated as a closed loop: trace(g f) vs trace(gf)
    nlohmann::json composite = {
        {"rank", 2},
        {"colors", {{{"g", 0}, {"chi", 1}}}},
        {"strands",
         {{{"color", 0}, {"mult", 2}, {"closed", false}}, {{"color", 0}, {"mult", 2}, {"closed", false}}}},
        {"coupons",
         {{{"ins", {0}}, {"outs", {1}}, {"matrix", mat({23.0, 31.0, 11.0, 7.0})}},
          {{"ins", {1}}, {"outs", {0}}, {"matrix", mat({1.0, 0.0, 0.0, 1.0})}}}}};
    nlohmann::json stacked = {
        {"rank", 2},
        {"colors", {{{"g", 0}, {"chi", 1}}}},
        {"strands",
         {{{"color", 0}, {"mult", 2}, {"closed", false}},
          {{"color", 0}, {"mult", 2}, {"closed", false}},
          {{"color", 0}, {"mult", 2}, {"closed", false}}}},
        {"coupons",
         {{{"ins", {0}}, {"outs", {2}}, {"matrix", mat({1.0, 5.0, 2.0, 3.0})}},
          {{"ins", {2}}, {"outs", {1}}, {"matrix", mat({3.0, 2.0, 1.0, 4.0})}},
          {{"ins", {1}}, {"outs", {0}}, {"matrix", mat({1.0, 0.0, 0.0, 1.0})}}}}};
    // composite matrix: [[3,2],[1,4]] * [[1,5],[2,3]] = [[7,21],[9,17]]
    nlohmann::json composed = composite;
    composed["coupons"][0]["matrix"] = mat({7.0, 21.0, 9.0, 17.0});
    cplx vs = evaluate_graph(decorate_diagram(host, stacked, d));
    cplx vc = evaluate_graph(decorate_diagram(host, composed, d));
    // both equal Z(S^3) times trace(g f) = 0.5 * 24, up to the coupon count
    // normalization (unit weights for pointed data)
    CHECK(std::abs(vs - vc) < 1e-10);
    CHECK(std::abs(vc - cplx(0.5 * 24.0)) < 1e-9);
}

TEST_CASE("diagram validation rejects broken documents") {
    auto d = load_datum("vec_z2");
    Skeleton host = make_s3_two_balls();
    nlohmann::json bad = load_json("graphs/unknot.json");
    bad["switches"].push_back({{"strand", 0}, {"type", "tau1"}, {"label", 0}, {"positive", false}});
    CHECK_THROWS_AS(decorate_diagram(host, bad, d), validation_error);
    nlohmann::json badc = load_json("graphs/unknot.json");
    badc["strands"][0]["closed"] = false;  // open strand with no coupons
    CHECK_THROWS_AS(decorate_diagram(host, badc, d), validation_error);
    // a grade-violating coupon with a nonzero matrix
    nlohmann::json badk = {
        {"rank", 2},
        {"colors", {{{"g", 1}, {"chi", 0}}, {{"g", 0}, {"chi", 0}}}},
        {"strands",
         {{{"color", 0}, {"mult", 1}, {"closed", false}}, {{"color", 1}, {"mult", 1}, {"closed", false}}}},
        {"coupons",
         {{{"ins", {0}}, {"outs", {1}}, {"matrix", {{1.0, 0.0}}}},
          {{"ins", {1}}, {"outs", {0}}, {"matrix", {{1.0, 0.0}}}}}}};
    CHECK_THROWS_AS(decorate_diagram(host, badk, d), validation_error);
}
