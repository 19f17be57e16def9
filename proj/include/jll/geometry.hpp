#pragma once

#include <vector>

#include "jll/ladder.hpp"
#include "jll/zeros.hpp"

namespace jll {

struct Chord {
    double T;
    double U;
    double tan_alpha;
    double alpha;  // radians
};

struct InflectionPoint {
    double rho;
    double gamma;
    double gamma_prime;
    double beta;  // chord angle of [gamma, rho]
};

struct ChordScanPoint {
    double U;
    double tan_alpha;
    double mean_value_ratio;  // int_gamma^{gamma+U} Z^2 / (U ln gamma tan alpha)
};

struct SecondClassWindow {
    double gamma_bar;  // first zero >= gamma + gamma^(1/3+2eps)
    double rho_bar;    // first ladder/chord crossing in (gamma, gamma_bar)
    double tan_chord;  // slope of the [gamma, gamma_bar] chord
    double delta;      // gamma_bar - gamma - gamma^(1/3+2eps) >= 0
};

// Chord slope from two independent ladder solves (profile-independent).
// tail_budget_rel > 0 relaxes the shared truncation point of the two solves
// (the truncation bias is common mode and cancels in the slope), which is
// what makes chords at T ~ 1e6 affordable; 0 keeps solver-grade truncation.
Chord chord(Ladder& lad, double T, double U, double tail_budget_rel = 0.0);

// |tan alpha - 1| <= eta; the default band is 2 ln ln T / ln T
bool is_almost_parallel(const Chord& c, double eta);
double default_parallel_band(double T);

// inflection of phi1 inside a zero gap, by sign change of the second
// difference at step (gamma'-gamma)/256, refined by bisection
InflectionPoint find_inflection(Ladder& lad, const ZeroPair& pair);

// rotating chord anchored at a zero: U sweeps (0, rho-gamma] on a log grid
std::vector<ChordScanPoint> rotating_chord_scan(Ladder& lad, double gamma, double rho,
                                                int n_angles);

SecondClassWindow second_class_window(Ladder& lad, double gamma);

// Admissible rotating-chord band "alpha in [eta, 1-eta]" (second-class
// windows). The default reads the bound as an angle in radians clipped to
// [eta, pi/2 - eta]; slope_units reads it literally in tan(alpha).
struct AngleBand {
    double eta = 0.05;
    bool slope_units = false;
    bool admits(double tan_alpha) const;
};

// fraction of zero gaps below 3 ln ln T / ln T over [T, T+T^(1/3+2eps)]
// (descriptive statistic; no pass/fail semantics)
struct GapStats {
    double fraction;
    int gaps;
    double threshold;
};
GapStats karatsuba_gap_fraction(double T, double epsilon);

}  // namespace jll
