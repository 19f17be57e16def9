#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "jll/errors.hpp"
#include "jll/grid.hpp"
#include "test_support.hpp"

using namespace jll;

namespace {

SampleGrid& grid() {
    static SampleGrid g(GridSpec{2.0e4, 30.0, 6.5, 4}, 1);
    g.build_fine();
    return g;
}

}  // namespace

TEST_CASE("integrate_z2: trivial, oracle, additivity") {
    auto ref = testsup::load_json("integrals.json");
    CHECK(grid().integrate_z2(500.0, 500.0).value == 0.0);

    auto v = grid().integrate_z2(0.0, 100.0, 1e-6);
    CHECK(std::abs(v.value - ref["z2_0_100"].get<double>()) <
          1e-6 * ref["z2_0_100"].get<double>());

    auto a = grid().integrate_z2(0.0, 50.0);
    auto b = grid().integrate_z2(50.0, 100.0);
    CHECK(std::abs(a.value + b.value - v.value) < 2e-9 * v.value + 1e-9);
    CHECK(a.value == doctest::Approx(ref["z2_0_50"].get<double>()).epsilon(1e-8));

    CHECK_THROWS_AS(grid().integrate_z2(-1.0, 5.0), jll::domain_error);
}

TEST_CASE("hl_cumulative: zero, oracle, monotone") {
    auto ref = testsup::load_json("integrals.json");
    CHECK(grid().hl_cumulative(0.0) == 0.0);
    double F = grid().hl_cumulative(1e4);
    CHECK(std::abs(F - ref["F_1e4"].get<double>()) < 1e-8 * F);
    double r = F / (1e4 * std::log(1e4));
    CHECK(r > 0.7);
    CHECK(r < 1.1);
    CHECK(grid().hl_cumulative(1e4 + 1.0) > F);
}

TEST_CASE("integrate_weighted against the oracle") {
    auto ref = testsup::load_json("integrals.json");
    auto j1 = grid().integrate_weighted(1000.0, 7.0, 1e-8);
    CHECK(std::abs(j1.value - ref["jweight_x1000"].get<double>()) < 1e-6 * j1.value);
    auto j2 = grid().integrate_weighted(2000.0, 7.0, 1e-8);
    CHECK(std::abs(j2.value - ref["jweight_x2000"].get<double>()) < 1e-6 * j2.value);
    // monotone in x (weight increases pointwise)
    CHECK(j2.value > j1.value);
    // dominance by the unweighted cumulative
    CHECK(j1.value <= grid().hl_cumulative(12500.0));
    CHECK_THROWS_AS(grid().integrate_weighted(5.0, 7.0), jll::domain_error);
    CHECK_THROWS_AS(grid().integrate_weighted(1000.0, 6.0), jll::domain_error);
}

TEST_CASE("truncation soundness and refinement convergence") {
    double x = 1000.0;
    double cut = SampleGrid::truncation_point(x, 1e-9 * 2480.0);
    auto m1 = grid().weighted_moments(x, cut, false);
    auto m2 = grid().weighted_moments(x, 1.2 * cut, false);
    CHECK(std::abs(m2.j0 - m1.j0) < 1e-8 * m1.j0);
    CHECK(std::abs(m2.j0 - m1.j0) <= m1.tail_bound + 1e-14 * m1.j0);

    auto c1 = grid().integrate_weighted(x, 7.0, 1e-6);
    auto c2 = grid().integrate_weighted(x, 7.0, 5e-7);
    CHECK(std::abs(c2.value - c1.value) <= c1.abs_error_estimate + 1e-14 * c1.value);
}

TEST_CASE("weighted moments power kernels are consistent") {
    // J1 and J2 against direct node sums over a small range
    double x = 5000.0;
    double cut = 3000.0;  // inside the fine tier
    auto m = grid().weighted_moments(x, cut, true);
    CHECK(m.j1 > 0.0);
    CHECK(m.j2 > 0.0);
    // crude Riemann check at coarse resolution (1% band)
    double s0 = 0, s1 = 0;
    double dt = 0.002;
    // trapezoid over the stored cumulative via small windows
    for (double t = 0.0; t < m.t_cut - dt; t += 50.0) {
        double w = grid().integrate_z2(t, std::min(t + 50.0, m.t_cut)).value;
        double tc = t + 25.0;
        s0 += w * std::exp(-2.0 * tc / x);
        s1 += w * tc * std::exp(-2.0 * tc / x);
    }
    CHECK(std::abs(s0 - m.j0) / m.j0 < 0.01);
    CHECK(std::abs(s1 - m.j1) / m.j1 < 0.02);
}

TEST_CASE("cache round trip is bit-exact and csv export is well-formed") {
    GridSpec spec{4.0e3, 30.0, 6.5, 4};
    SampleGrid a(spec, 1);
    a.build_fine();
    a.extend_tail(6.0e3);
    std::string path = "test_cache_roundtrip.bin";
    a.save(path);

    SampleGrid b(spec, 1);
    REQUIRE(b.load(path));
    CHECK(b.fine_max() == a.fine_max());
    CHECK(b.tail_max() == a.tail_max());
    // bit-for-bit equality of derived quantities
    CHECK(a.hl_cumulative(3456.789) == b.hl_cumulative(3456.789));
    auto ma = a.weighted_moments(500.0, 5000.0, true);
    auto mb = b.weighted_moments(500.0, 5000.0, true);
    CHECK(ma.j0 == mb.j0);
    CHECK(ma.j1 == mb.j1);
    CHECK(ma.j2 == mb.j2);

    // incompatible spec refuses to load
    SampleGrid c(GridSpec{5.0e3, 30.0, 6.5, 4}, 1);
    CHECK(!c.load(path));

    a.export_csv("test_cache_nodes.csv");
    std::FILE* f = std::fopen("test_cache_nodes.csv", "r");
    REQUIRE(f);
    char line[256];
    REQUIRE(std::fgets(line, sizeof line, f));
    CHECK(std::string(line).find("t_max=") != std::string::npos);
    REQUIRE(std::fgets(line, sizeof line, f));
    CHECK(std::string(line) == "t,z2\n");
    double t, z2;
    REQUIRE(std::fgets(line, sizeof line, f));
    CHECK(std::sscanf(line, "%lf,%lf", &t, &z2) == 2);
    CHECK(z2 >= 0.0);
    std::fclose(f);

    // the 17-digit CSV round-trips the fine tier bit-exactly
    SampleGrid d(spec, 1);
    REQUIRE(d.import_csv("test_cache_nodes.csv"));
    CHECK(d.hl_cumulative(3456.789) == a.hl_cumulative(3456.789));
    SampleGrid e(GridSpec{5.0e3, 30.0, 6.5, 4}, 1);
    CHECK(!e.import_csv("test_cache_nodes.csv"));
    std::remove(path.c_str());
    std::remove("test_cache_nodes.csv");
}

TEST_CASE("tail tier agrees with the fine tier where they overlap") {
    // rebuild a small range in both policies and compare block integrals
    GridSpec fine_spec{8.0e3, 30.0, 6.5, 4};
    SampleGrid fine_only(fine_spec, 1);
    fine_only.build_fine();
    GridSpec split_spec{4.0e3, 30.0, 6.5, 4};
    SampleGrid split(split_spec, 1);
    split.build_fine();
    split.extend_tail(8.0e3);
    for (double t = 4.2e3; t < 7.8e3; t += 800.0) {
        double a = fine_only.hl_cumulative(t + 700.0) - fine_only.hl_cumulative(t);
        double b = split.hl_cumulative(t + 700.0) - split.hl_cumulative(t);
        CHECK(std::abs(a - b) < 1e-9 * std::abs(a));
    }
}
