#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "jll/constants.hpp"
#include "jll/errors.hpp"
#include "jll/geometry.hpp"
#include "jll/zeros.hpp"

using namespace jll;

namespace {

struct Fixture {
    SampleGrid grid;
    PrimeSieve primes;
    Ladder lad;
    Fixture() : grid(GridSpec{2.0e4, 30.0, 6.5, 4}, 1), lad(grid, primes) {
        grid.build_fine();
    }
};

Fixture& fix() {
    static Fixture f;
    return f;
}

}  // namespace

TEST_CASE("fundamental chord near slope one at T=1e4") {
    double T = 1e4;
    double U0 = fix().lad.window_u0(T);
    auto c = chord(fix().lad, T, U0);
    CHECK(c.tan_alpha > 0.0);
    // ln ln T / ln T ~ 0.24 at 1e4; treat 3x as the desk band
    CHECK(std::abs(c.tan_alpha - 1.0) < 3.0 * std::log(std::log(T)) / std::log(T));
    CHECK(c.alpha == doctest::Approx(std::atan(c.tan_alpha)));

    // degenerate stability: U and 2U chords within a factor two
    auto c2 = chord(fix().lad, T, 2.0 * U0);
    CHECK(c2.tan_alpha / c.tan_alpha < 2.0);
    CHECK(c2.tan_alpha / c.tan_alpha > 0.5);

    CHECK(is_almost_parallel(c, default_parallel_band(T)));
    CHECK(is_almost_parallel(c, 1e300));  // vacuous band
    Chord flat{T, 1.0, 0.02, std::atan(0.02)};
    CHECK(!is_almost_parallel(flat, default_parallel_band(T)));
    CHECK_THROWS_AS(is_almost_parallel(c, 0.0), jll::domain_error);
}

TEST_CASE("profile chord matches independent solves") {
    double T = 1.1e4, U = 500.0;
    auto prof = fix().lad.profile(T - 10.0, U + 20.0, 0);
    double tan_prof = (prof.eval(T + U) - prof.eval(T)) / U;
    auto c = chord(fix().lad, T, U);
    CHECK(std::abs(tan_prof - c.tan_alpha) / c.tan_alpha < 1e-4);
}

TEST_CASE("inflection point inside a zero gap") {
    auto pairs = find_zeros(1.15e4, 1.15e4 + 6.0);
    REQUIRE(!pairs.empty());
    // pick a reasonably wide gap so the 256-point scan resolves it
    ZeroPair pick = pairs[0];
    for (const auto& p : pairs)
        if (p.gamma_prime - p.gamma > pick.gamma_prime - pick.gamma)
            pick = p;
    auto ip = find_inflection(fix().lad, pick);
    CHECK(ip.rho > pick.gamma);
    CHECK(ip.rho < pick.gamma_prime);
    CHECK(ip.beta > 0.0);

    // convex just right of gamma, concave just left of gamma'
    auto prof = fix().lad.profile(pick.gamma - 1.0, (pick.gamma_prime - pick.gamma) + 2.0, 0);
    double h = (pick.gamma_prime - pick.gamma) / 256.0;
    auto d2 = [&](double t) {
        return prof.eval(t - h) - 2.0 * prof.eval(t) + prof.eval(t + h);
    };
    CHECK(d2(pick.gamma + 2 * h) > 0.0);
    CHECK(d2(pick.gamma_prime - 2 * h) < 0.0);
}

TEST_CASE("rotating chord scan: alpha below beta, ratio near one at the wide end") {
    auto pairs = find_zeros(1.2e4, 1.2e4 + 6.0);
    REQUIRE(!pairs.empty());
    ZeroPair pick = pairs[0];
    for (const auto& p : pairs)
        if (p.gamma_prime - p.gamma > pick.gamma_prime - pick.gamma)
            pick = p;
    auto ip = find_inflection(fix().lad, pick);
    auto scan = rotating_chord_scan(fix().lad, pick.gamma, ip.rho, 12);
    REQUIRE(scan.size() == 12);
    for (const auto& s : scan) {
        CHECK(std::atan(s.tan_alpha) <= ip.beta + 5e-4);
        CHECK(s.tan_alpha >= 0.0);
    }
    // at U near rho - gamma the mean-value ratio is O(1); assert the desk band
    // only where the window is not microscopic
    const auto& last = scan.back();
    CHECK(last.U == doctest::Approx(ip.rho - pick.gamma));
    if (last.U > 1e-2) {
        CHECK(last.mean_value_ratio > 0.3);
        CHECK(last.mean_value_ratio < 3.0);
    }
}

TEST_CASE("second class window") {
    auto zs = find_zero_ordinates(1.1e4, 1.1e4 + 3.0);
    REQUIRE(!zs.empty());
    double gamma = zs[0];
    auto w = second_class_window(fix().lad, gamma);
    CHECK(w.delta >= 0.0);
    CHECK(w.rho_bar > gamma);
    CHECK(w.rho_bar < w.gamma_bar);
    // (5.3): chord slope 1 + O(1/ln gamma); generous desk band
    CHECK(std::abs(w.tan_chord - 1.0) < 0.5);

    // ladder lies below the chord just right of gamma
    auto prof = fix().lad.profile(gamma - 0.5, (w.gamma_bar - gamma) + 1.0, 0);
    double pg = prof.eval(gamma);
    double t = gamma + 0.05 * (w.rho_bar - gamma);
    CHECK(prof.eval(t) < pg + w.tan_chord * (t - gamma));
}

TEST_CASE("corollary 1 equivalence: mean ratio tracks chord slope") {
    double T = 1.15e4;
    double U0 = fix().lad.window_u0(T);
    auto prof = fix().lad.profile(T - 5.0, U0 + 10.0, 0);
    double lnT = std::log(T);
    for (double frac : {0.1, 0.35, 0.6}) {
        double N = T + frac * U0, M = N + 0.3 * U0;
        double mean = fix().grid.integrate_z2(N, M).value / (M - N);
        double tan_a = (prof.eval(M) - prof.eval(N)) / (M - N);
        double r1 = mean / lnT, r2 = tan_a;
        CHECK(r1 / r2 > 1.0 / 1.3);
        CHECK(r1 / r2 < 1.3);
    }
}

TEST_CASE("angle band: both readings of the admissible range") {
    AngleBand angle;  // radians, default
    AngleBand slope;
    slope.slope_units = true;
    CHECK(angle.admits(1.0));            // 45 degrees
    CHECK(!slope.admits(1.0));           // tan = 1 > 1 - eta
    CHECK(slope.admits(0.5));
    CHECK(!angle.admits(std::tan(0.01)));  // below eta radians
    CHECK(!slope.admits(0.01));
}

TEST_CASE("karatsuba gap fraction is a well-formed statistic") {
    auto gs = karatsuba_gap_fraction(1.2e4, 0.01);
    CHECK(gs.gaps > 3);
    CHECK(gs.fraction >= 0.0);
    CHECK(gs.fraction <= 1.0);
    CHECK(gs.threshold == doctest::Approx(3.0 * std::log(std::log(1.2e4)) / std::log(1.2e4)));
}
