// Acceptance checks: one line of output per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "otq/evaluator.hpp"
#include "otq/moves.hpp"
#include "otq/wilson.hpp"

using namespace otq;
using clock_type = std::chrono::steady_clock;

namespace {

std::string fix(const std::string& rel) { return std::string(FIXTURES_DIR) + "/" + rel; }

OrbifoldDatum load_datum(const std::string& name) {
    return datum_from_spherical(FusionCategory::load_file(fix("categories/" + name + ".json")));
}

cplx eval_first(const Skeleton& sk, const OrbifoldDatum& d) {
    SolveOptions first{1, true};
    return evaluate_closed(sk, solve_local_order(sk, first)[0], d);
}

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

bool run(int number, const std::string& label, const std::function<bool(std::string&)>& body,
         int& failures) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %2d [%s]: %s%s%s\n", number, label.c_str(), ok ? "PASS" : "FAIL",
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++failures;
    return ok;
}

bool criterion_pentagon(std::string& detail) {
    double worst = 0.0, worst_time = 0.0;
    auto check = [&](const FusionCategory& cat) {
        auto t0 = clock_type::now();
        worst = std::max(worst, cat.check_pentagon().max_residual);
        worst_time = std::max(worst_time, seconds_since(t0));
    };
    for (int n = 1; n <= 5; ++n) check(pointed_category(n));
    check(pointed_category(2, standard_cocycle(2, 1)));
    check(FusionCategory::load_file(fix("categories/fibonacci.json")));
    check(FusionCategory::load_file(fix("categories/ising.json")));
    detail = "max residual " + std::to_string(worst) + ", slowest " + std::to_string(worst_time) + "s";
    return worst < 1e-9 && worst_time < 5.0;
}

bool criterion_variants(std::string& detail) {
    auto t0 = clock_type::now();
    int b = variant_count(MoveKind::B), l = variant_count(MoveKind::L), t = variant_count(MoveKind::T);
    double dt = seconds_since(t0);
    detail = "B=" + std::to_string(b) + " L=" + std::to_string(l) + " T=" + std::to_string(t) + ", " +
             std::to_string(dt) + "s";
    return b == 3 && l == 9 && t == 20 && dt < 10.0;
}

bool criterion_axioms(std::string& detail) {
    double worst = 0.0, worst_time = 0.0, weakest_detect = 1e300;
    for (const char* name : {"trivial", "vec_z2", "vec_z2_semion", "vec_z3", "vec_z4", "vec_z5",
                             "fibonacci", "ising"}) {
        auto t0 = clock_type::now();
        OrbifoldDatum d = load_datum(name);
        worst = std::max(worst, check_O_axioms(d).max_residual());
        OrbifoldDatum bad = d;
        bad.psi.back() *= 1.01;
        weakest_detect = std::min(weakest_detect, check_O_axioms(bad).max_residual());
        worst_time = std::max(worst_time, seconds_since(t0));
    }
    detail = "max residual " + std::to_string(worst) + ", weakest detection " +
             std::to_string(weakest_detect) + ", slowest " + std::to_string(worst_time) + "s";
    return worst < 1e-9 && weakest_detect > 1e-3 && worst_time < 30.0;
}

bool criterion_skeleton_independence(std::string& detail) {
    auto t0 = clock_type::now();
    Skeleton five_tet = dual_of_triangulation(
        nlohmann::json::parse(std::ifstream(fix("triangulations/five_tet_s3.json"))));
    double worst = 0.0;
    for (const char* name : {"vec_z2", "vec_z3", "fibonacci"}) {
        OrbifoldDatum d = load_datum(name);
        cplx z[3] = {eval_first(make_s3_two_balls(), d), eval_first(make_s3_torus_halves(), d),
                     eval_first(five_tet, d)};
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) worst = std::max(worst, std::abs(z[i] - z[j]));
    }
    double dt = seconds_since(t0);
    detail = "max pairwise gap " + std::to_string(worst) + ", " + std::to_string(dt) + "s";
    return worst < 1e-9 && dt < 60.0;
}

bool criterion_move_fuzz(std::string& detail) {
    auto t0 = clock_type::now();
    OrbifoldDatum d = load_datum("vec_z2");
    SolveOptions first{1, true};
    double worst = 0.0;
    for (const Skeleton& sk : {make_s3_two_balls(), make_s3_torus_halves(), make_s2xs1_product(),
                               make_lens(1), make_lens(2), make_lens(3), make_t3_dual()}) {
        auto bits = solve_local_order(sk, first)[0];
        cplx base = evaluate_closed(sk, bits, d);
        WalkResult walk = random_walk(sk, bits, 100, 20250823);
        worst = std::max(worst, std::abs(evaluate_closed(walk.sk, walk.bits, d) - base));
    }
    double dt = seconds_since(t0);
    detail = "max drift " + std::to_string(worst) + " over 7 fixtures x 100 moves, " +
             std::to_string(dt) + "s";
    return worst < 1e-8 && dt < 300.0;
}

bool criterion_idempotents(std::string& detail) {
    double worst = 0.0;
    for (const char* name : {"vec_z2", "vec_z3", "fibonacci", "ising"}) {
        OrbifoldDatum d = load_datum(name);
        auto P = cylinder_map(make_cylinder("s2_parallel"), d);
        auto A = cylinder_map(make_cylinder("s2_cross"), d);
        auto B = cylinder_map(make_cylinder("s2_cross_flip"), d);
        auto T = cylinder_map(make_cylinder("t2_theta"), d);
        auto Tf = cylinder_map(make_cylinder("t2_theta_flip"), d);
        worst = std::max(worst, (P * P - P).cwiseAbs().maxCoeff());
        worst = std::max(worst, (T * T - T).cwiseAbs().maxCoeff());
        worst = std::max(worst, (B * A - P).cwiseAbs().maxCoeff());
        worst = std::max(worst, (Tf * T - T).cwiseAbs().maxCoeff());
        // eigenvalues within 1e-6 of {0,1}: state_space throws otherwise
        state_space(make_cylinder("s2_parallel"), d);
        state_space(make_cylinder("t2_theta"), d);
    }
    detail = "max identity gap " + std::to_string(worst);
    return worst < 1e-9;
}

bool criterion_trace(std::string& detail) {
    double worst = 0.0;
    bool dims_ok = true;
    for (const char* name : {"vec_z2", "vec_z3", "fibonacci", "ising"}) {
        OrbifoldDatum d = load_datum(name);
        cplx trP = cylinder_map(make_cylinder("s2_parallel"), d).trace();
        cplx trT = cylinder_map(make_cylinder("t2_theta"), d).trace();
        worst = std::max(worst, std::abs(trP - eval_first(make_s2xs1_product(), d)));
        worst = std::max(worst, std::abs(trT - eval_first(make_t3_dual(), d)));
    }
    dims_ok &= state_space(make_cylinder("t2_theta"), load_datum("vec_z2")).dimension == 4;
    dims_ok &= state_space(make_cylinder("t2_theta"), load_datum("vec_z3")).dimension == 9;
    detail = "max trace gap " + std::to_string(worst) + ", torus dims " +
             (dims_ok ? "n^2" : "WRONG");
    return worst < 1e-9 && dims_ok;
}

bool criterion_brute_force(std::string& detail) {
    SolveOptions first{1, true};
    double worst = 0.0;
    int networks = 0;
    for (const char* name : {"trivial", "vec_z2", "vec_z2_semion", "vec_z3", "vec_z4", "vec_z5",
                             "fibonacci", "ising"}) {
        OrbifoldDatum d = load_datum(name);
        for (const Skeleton& sk : {make_s3_two_balls(), make_s3_torus_halves(), make_s2xs1_product(),
                                   make_lens(1), make_lens(2), make_lens(3), make_t3_dual()}) {
            auto bits = solve_local_order(sk, first)[0];
            TensorNetwork tn = foamify(decorate(sk, bits, d));
            if (labeling_count(tn) > 1e6) continue;
            ++networks;
            worst = std::max(worst, std::abs(contract_scalar(tn) - brute_force(tn).values[0]));
        }
    }
    detail = std::to_string(networks) + " networks, max gap " + std::to_string(worst);
    return networks > 0 && worst < 1e-10;
}

bool criterion_wilson_axioms(std::string& detail) {
    double worst = 0.0;
    bool counts_ok = true;
    for (int n : {2, 3}) {
        OrbifoldDatum d = load_datum(n == 2 ? "vec_z2" : "vec_z3");
        auto objs = center_objects_pointed(d);
        counts_ok &= static_cast<int>(objs.size()) == n * n;
        for (const auto& o : objs) {
            worst = std::max(worst, check_T_axioms(d, o).max_residual());
            worst = std::max(worst, std::abs(twist_left(o) - twist_right(o)));
        }
    }
    detail = std::string("counts ") + (counts_ok ? "n^2" : "WRONG") + ", max residual " +
             std::to_string(worst);
    return counts_ok && worst < 1e-10;
}

bool criterion_graph_invariants(std::string& detail) {
    Skeleton host = make_s3_two_balls();
    double worst_oracle = 0.0;
    // unknot and Hopf link over Z/2 and Z/3 against the phase-product oracle
    for (int n : {2, 3}) {
        OrbifoldDatum d = load_datum(n == 2 ? "vec_z2" : "vec_z3");
        cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / n);
        for (int g = 0; g < n; ++g)
            for (int k = 0; k < n; ++k) {
                nlohmann::json unknot{{"rank", n},
                                      {"colors", {{{"g", g}, {"chi", k}}}},
                                      {"strands", {{{"color", 0}, {"closed", true}}}}};
                cplx oracle = cplx(1.0 / n);
                worst_oracle = std::max(
                    worst_oracle,
                    std::abs(evaluate_graph(decorate_diagram(host, unknot, d)) - oracle));
            }
        nlohmann::json hopf{
            {"rank", n},
            {"colors", {{{"g", 1}, {"chi", 1}}, {{"g", n - 1}, {"chi", 1}}}},
            {"strands",
             {{{"color", 0}, {"closed", true}}, {{"color", 1}, {"closed", true}}}},
            {"crossings",
             {{{"over", 0}, {"under", 1}, {"sign", 1}}, {{"over", 1}, {"under", 0}, {"sign", 1}}}}};
        cplx oracle = (1.0 / n) * std::pow(omega, 1 * (n - 1)) * std::pow(omega, 1 * 1);
        cplx hv = evaluate_graph(decorate_diagram(host, hopf, d));
        worst_oracle = std::max(worst_oracle, std::abs(hv - oracle));
        // 50 random value-preserving rewrites
        nlohmann::json moved = random_omega_moves(hopf, 50, 7 + n);
        worst_oracle = std::max(
            worst_oracle, std::abs(evaluate_graph(decorate_diagram(host, moved, d)) - hv) > 1e-8
                              ? 1.0
                              : 0.0);
    }
    // empty graph equals the closed invariant bitwise
    OrbifoldDatum d = load_datum("fibonacci");
    auto empty = decorate_diagram(host, nlohmann::json::object(), d);
    cplx via_graph = evaluate_graph(empty);
    cplx via_closed = evaluate_closed(host, empty.bits, d);
    bool bitwise = via_graph.real() == via_closed.real() && via_graph.imag() == via_closed.imag();
    detail = "max oracle gap " + std::to_string(worst_oracle) + ", empty graph " +
             (bitwise ? "bitwise" : "DIFFERS");
    return worst_oracle < 1e-9 && bitwise;
}

bool criterion_coupons(std::string& detail) {
    OrbifoldDatum d = load_datum("vec_z2");
    Skeleton host = make_s3_two_balls();
    auto mat = [](std::initializer_list<double> re) {
        nlohmann::json arr = nlohmann::json::array();
        for (double r : re) arr.push_back({r, 0.0});
        return arr;
    };
    nlohmann::json stacked{
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
    nlohmann::json composed{
        {"rank", 2},
        {"colors", {{{"g", 0}, {"chi", 1}}}},
        {"strands",
         {{{"color", 0}, {"mult", 2}, {"closed", false}},
          {{"color", 0}, {"mult", 2}, {"closed", false}}}},
        {"coupons",
         {{{"ins", {0}}, {"outs", {1}}, {"matrix", mat({7.0, 21.0, 9.0, 17.0})}},
          {{"ins", {1}}, {"outs", {0}}, {"matrix", mat({1.0, 0.0, 0.0, 1.0})}}}}};
    cplx vs = evaluate_graph(decorate_diagram(host, stacked, d));
    cplx vc = evaluate_graph(decorate_diagram(host, composed, d));
    detail = "gap " + std::to_string(std::abs(vs - vc));
    return std::abs(vs - vc) < 1e-10;
}

}  // namespace

int main() {
    int failures = 0;
    run(1, "category validation", criterion_pentagon, failures);
    run(2, "move calibration", criterion_variants, failures);
    run(3, "axiom suite", criterion_axioms, failures);
    run(4, "skeleton independence", criterion_skeleton_independence, failures);
    run(5, "rewrite fuzz", criterion_move_fuzz, failures);
    run(6, "idempotent laws", criterion_idempotents, failures);
    run(7, "trace identity", criterion_trace, failures);
    run(8, "brute-force oracle", criterion_brute_force, failures);
    run(9, "line-object axioms", criterion_wilson_axioms, failures);
    run(10, "graph invariants", criterion_graph_invariants, failures);
    run(11, "coupon composition", criterion_coupons, failures);
    std::printf("%s (%d/11 passed)\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                11 - failures);
    return failures == 0 ? 0 : 1;
}
