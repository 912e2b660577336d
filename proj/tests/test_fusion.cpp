#include <doctest.h>

#include <cmath>

#include "otq/fusion_data.hpp"

using namespace otq;

static std::string fix(const std::string& rel) { return std::string(FIXTURES_DIR) + "/" + rel; }

TEST_CASE("pointed categories validate with exact structure") {
    for (int n = 1; n <= 5; ++n) {
        auto cat = pointed_category(n);
        CHECK(cat.rank() == n);
        CHECK(cat.global_dim_sq() == doctest::Approx(n).epsilon(1e-15));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    cplx v = cat.F(a, b, c, (a + b + c) % n, (a + b) % n, (b + c) % n);
                    CHECK(v == cplx(1.0));
                }
        CHECK(cat.check_pentagon().max_residual == 0.0);
    }
}

TEST_CASE("nontrivial cocycle on Z/2 gives the semion input") {
    auto cat = pointed_category(2, standard_cocycle(2, 1));
    CHECK(std::abs(cat.F(1, 1, 1, 1, 0, 0) - cplx(-1.0)) < 1e-12);
    CHECK(cat.check_pentagon().max_residual < 1e-12);
}

TEST_CASE("cocycle condition is enforced") {
    auto bad = [](int a, int b, int c) -> cplx { return (a == 1 && b == 1 && c == 1) ? cplx(0, 1) : cplx(1); };
    CHECK_THROWS_AS(pointed_category(2, bad), validation_error);
}

TEST_CASE("fixture categories load and pass the pentagon") {
    for (const char* name : {"trivial", "vec_z2", "vec_z3", "vec_z4", "vec_z5", "vec_z2_semion",
                             "fibonacci", "ising"}) {
        auto cat = FusionCategory::load_file(fix(std::string("categories/") + name + ".json"));
        auto rep = cat.check_pentagon();
        CHECK_MESSAGE(rep.max_residual < 1e-9, name << " residual " << rep.max_residual);
    }
}

TEST_CASE("fibonacci structure") {
    auto cat = FusionCategory::load_file(fix("categories/fibonacci.json"));
    double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(cat.global_dim_sq() == doctest::Approx(1 + phi * phi).epsilon(1e-12));
    // F block inverse really is the inverse
    cplx s(0.0);
    for (int f = 0; f < 2; ++f) s += cat.F(1, 1, 1, 1, 0, f) * cat.Finv(1, 1, 1, 1, f, 0);
    CHECK(std::abs(s - cplx(1.0)) < 1e-12);
    s = cplx(0.0);
    for (int f = 0; f < 2; ++f) s += cat.F(1, 1, 1, 1, 0, f) * cat.Finv(1, 1, 1, 1, f, 1);
    CHECK(std::abs(s) < 1e-12);
}

TEST_CASE("dimension equation failure is rejected") {
    auto doc = pointed_category(2).to_json();
    doc["N"][1][1][1] = 1;  // forces d*d = 1 != 2
    CHECK_THROWS_AS(FusionCategory::from_json(doc), validation_error);
}

TEST_CASE("corrupting one F entry breaks the pentagon") {
    auto cat = FusionCategory::load_file(fix("categories/fibonacci.json"));
    auto doc = cat.to_json();
    for (auto& entry : doc["F"]) {
        if (entry["a"] == 1 && entry["b"] == 1 && entry["c"] == 1 && entry["d"] == 1 &&
            entry["e"] == 0 && entry["f"] == 0) {
            entry["re"] = -entry["re"].get<double>();
        }
    }
    bool caught = false;
    double residual = 0.0;
    try {
        FusionCategory::from_json(doc);
    } catch (const validation_error& ex) {
        caught = true;
    }
    CHECK(caught);
    (void)residual;
}

TEST_CASE("serialization round-trips to identical numerical data") {
    for (const char* name : {"vec_z2_semion", "fibonacci", "ising"}) {
        auto cat = FusionCategory::load_file(fix(std::string("categories/") + name + ".json"));
        auto again = FusionCategory::from_json(cat.to_json());
        CHECK(cat == again);
        CHECK(FusionCategory::from_json(again.to_json()) == again);
    }
}
