#include <benchmark/benchmark.h>

#include "otq/evaluator.hpp"
#include "otq/moves.hpp"
#include "otq/wilson.hpp"

#include <fstream>

namespace {

std::string fixture(const std::string& rel) { return std::string(FIXTURES_DIR) + "/" + rel; }

otq::FusionCategory cat(const std::string& name) {
    return otq::FusionCategory::load_file(fixture("categories/" + name + ".json"));
}

}  // namespace

static void BM_PentagonIsing(benchmark::State& state) {
    auto c = cat("ising");
    for (auto _ : state) {
        benchmark::DoNotOptimize(c.check_pentagon().max_residual);
    }
}
BENCHMARK(BM_PentagonIsing);

static void BM_DatumAxiomsFibonacci(benchmark::State& state) {
    auto datum = otq::datum_from_spherical(cat("fibonacci"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(otq::check_O_axioms(datum).max_residual());
    }
}
BENCHMARK(BM_DatumAxiomsFibonacci);

static void BM_ClosedInvariantLens3(benchmark::State& state) {
    auto datum = otq::datum_from_spherical(cat("vec_z3"));
    auto sk = otq::library_skeleton("lens(3)");
    auto orders = otq::solve_local_order(sk, {1, true});
    for (auto _ : state) {
        benchmark::DoNotOptimize(otq::evaluate_closed(sk, orders[0], datum));
    }
}
BENCHMARK(BM_ClosedInvariantLens3);

static void BM_RandomWalk50(benchmark::State& state) {
    auto sk = otq::library_skeleton("lens(2)");
    auto orders = otq::solve_local_order(sk, {1, true});
    for (auto _ : state) {
        benchmark::DoNotOptimize(otq::random_walk(sk, orders[0], 50, 7).sk.faces.size());
    }
}
BENCHMARK(BM_RandomWalk50);

static void BM_InvariantAfter50Moves(benchmark::State& state) {
    auto datum = otq::datum_from_spherical(cat("vec_z2"));
    auto sk = otq::library_skeleton("lens(2)");
    auto orders = otq::solve_local_order(sk, {1, true});
    auto walk = otq::random_walk(sk, orders[0], 50, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(otq::evaluate_closed(walk.sk, walk.bits, datum));
    }
}
BENCHMARK(BM_InvariantAfter50Moves);

static void BM_CylinderMapTorus(benchmark::State& state) {
    auto datum = otq::datum_from_spherical(cat("vec_z2"));
    auto cyl = otq::make_cylinder("t2_theta");
    for (auto _ : state) {
        benchmark::DoNotOptimize(otq::cylinder_map(cyl, datum).norm());
    }
}
BENCHMARK(BM_CylinderMapTorus);

static void BM_StateSpaceTorus(benchmark::State& state) {
    auto datum = otq::datum_from_spherical(cat("vec_z3"));
    auto cyl = otq::make_cylinder("t2_theta");
    for (auto _ : state) {
        benchmark::DoNotOptimize(otq::state_space(cyl, datum).dimension);
    }
}
BENCHMARK(BM_StateSpaceTorus);

static void BM_GraphHopfZ3(benchmark::State& state) {
    auto datum = otq::datum_from_spherical(cat("vec_z3"));
    auto sk = otq::library_skeleton("s3_two_balls");
    std::ifstream in(fixture("graphs/hopf.json"));
    auto doc = nlohmann::json::parse(in);
    doc["rank"] = 3;
    doc["colors"] = {{{"g", 1}, {"chi", 1}}, {{"g", 1}, {"chi", 2}}};
    for (auto _ : state) {
        auto diagram = otq::decorate_diagram(sk, doc, datum);
        benchmark::DoNotOptimize(otq::evaluate_graph(diagram));
    }
}
BENCHMARK(BM_GraphHopfZ3);

BENCHMARK_MAIN();
