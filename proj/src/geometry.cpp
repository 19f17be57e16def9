#include "jll/geometry.hpp"

#include <cmath>

#include "jll/constants.hpp"
#include "jll/errors.hpp"
#include "jll/theta.hpp"

namespace jll {

Chord chord(Ladder& lad, double T, double U, double tail_budget_rel) {
    if (U <= 0.0)
        throw domain_error("chord: U must be positive");
    // Shared truncation point, so the truncation bias is common to both
    // solves and cancels in the difference; that cancellation admits a much
    // looser tail budget than a single solve needs (slope error stays below
    // ~2e-3 while the far tail shrinks by roughly half).
    double F = lad.grid().hl_cumulative(T + U);
    double budget = F * std::max(lad.config().tol_residual * 0.1, tail_budget_rel);
    double x_hat = 2.0 * T * (1.0 - (1.0 - kEuler) / std::log(T));
    double cut = std::min(SampleGrid::truncation_point(x_hat, budget),
                          lad.config().a_param * x_hat * std::log(x_hat));
    double phi_a = lad.solve(T, cut).phi;
    double phi_b = lad.solve(T + U, cut).phi;
    double tan_alpha = (phi_b - phi_a) / (2.0 * U);
    return {T, U, tan_alpha, std::atan(tan_alpha)};
}

bool is_almost_parallel(const Chord& c, double eta) {
    if (!(eta > 0.0))
        throw domain_error("is_almost_parallel: eta must be positive");
    return std::abs(c.tan_alpha - 1.0) <= eta;
}

double default_parallel_band(double T) { return 2.0 * std::log(std::log(T)) / std::log(T); }

InflectionPoint find_inflection(Ladder& lad, const ZeroPair& pair) {
    double g = pair.gamma, gp = pair.gamma_prime;
    if (g < lad.config().t0_min)
        throw domain_error("find_inflection: gamma below the operational floor");
    double gap = gp - g;
    double pad = 0.25 * gap + 0.5;
    auto prof = lad.profile(g - pad, gap + 2.0 * pad, 0);

    double h = gap / 256.0;
    auto d2 = [&](double t) {
        return prof.eval(t - h) - 2.0 * prof.eval(t) + prof.eval(t + h);
    };
    // convex right of gamma: walk until the second difference flips sign
    double t = g + 2.0 * h;
    double prev = d2(t);
    double lo = 0.0, hi = 0.0;
    for (t += h; t < gp - 1.5 * h; t += h) {
        double cur = d2(t);
        if (prev > 0.0 && cur <= 0.0) {
            lo = t - h;
            hi = t;
            break;
        }
        prev = cur;
    }
    if (hi == 0.0)
        throw resolution_error("find_inflection: no sign change of the second "
                               "difference inside the gap");
    double flo = d2(lo);
    while (hi - lo > 1e-9) {
        double m = 0.5 * (lo + hi);
        double fm = d2(m);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    double rho = 0.5 * (lo + hi);
    double beta = std::atan((prof.eval(rho) - prof.eval(g)) / (rho - g));
    return {rho, g, gp, beta};
}

std::vector<ChordScanPoint> rotating_chord_scan(Ladder& lad, double gamma, double rho,
                                                int n_angles) {
    if (n_angles < 2)
        throw domain_error("rotating_chord_scan: need at least two angles");
    if (rho <= gamma)
        throw domain_error("rotating_chord_scan: rho must exceed gamma");
    double span = rho - gamma;
    auto prof = lad.profile(gamma - 0.5, span + 1.0, 0);
    double lng = std::log(gamma);
    double u_min = std::max(1e-3, span * 1e-3);
    std::vector<ChordScanPoint> out;
    out.reserve(n_angles);
    double p_g = prof.eval(gamma);
    for (int i = 0; i < n_angles; ++i) {
        double u = u_min * std::pow(span / u_min, static_cast<double>(i) / (n_angles - 1));
        double tan_alpha = (prof.eval(gamma + u) - p_g) / u;
        double lhs = lad.grid().integrate_z2(gamma, gamma + u).value;
        double rhs = u * lng * tan_alpha;
        out.push_back({u, tan_alpha, rhs != 0.0 ? lhs / rhs : 0.0});
    }
    return out;
}

SecondClassWindow second_class_window(Ladder& lad, double gamma) {
    if (gamma < lad.config().t0_min)
        throw domain_error("second_class_window: gamma below the operational floor");
    double u = std::pow(gamma, 1.0 / 3.0 + 2.0 * lad.config().epsilon);
    double from = gamma + u;
    double mean_gap = kPi / theta_deriv(from);
    std::vector<double> zs;
    for (double reach = 8.0; zs.empty() && reach < 200.0; reach *= 2.0)
        zs = find_zero_ordinates(from, from + reach * mean_gap);
    if (zs.empty())
        throw resolution_error("second_class_window: no zero found past gamma + U");
    double gbar = zs.front();

    auto prof = lad.profile(gamma - 0.5, (gbar - gamma) + 1.0, 0);
    double pg = prof.eval(gamma), pb = prof.eval(gbar);
    double slope = (pb - pg) / (gbar - gamma);
    auto dev = [&](double t) { return prof.eval(t) - (pg + slope * (t - gamma)); };

    // the ladder starts below the chord; find the first return crossing
    int n = 4096;
    double lo = 0.0, hi = 0.0, prev = 0.0;
    bool seen_below = false;
    for (int i = 1; i < n; ++i) {
        double t = gamma + (gbar - gamma) * i / n;
        double d = dev(t);
        if (d < 0.0)
            seen_below = true;
        if (seen_below && prev < 0.0 && d >= 0.0) {
            lo = gamma + (gbar - gamma) * (i - 1) / n;
            hi = t;
            break;
        }
        prev = d;
    }
    if (hi == 0.0)
        throw resolution_error("second_class_window: ladder/chord crossing not found");
    double flo = dev(lo);
    while (hi - lo > 1e-9) {
        double m = 0.5 * (lo + hi);
        if ((dev(m) < 0.0) == (flo < 0.0)) {
            lo = m;
            flo = dev(m);
        } else {
            hi = m;
        }
    }
    return {gbar, 0.5 * (lo + hi), slope, gbar - gamma - u};
}

bool AngleBand::admits(double tan_alpha) const {
    if (slope_units)
        return tan_alpha >= eta && tan_alpha <= 1.0 - eta;
    double a = std::atan(tan_alpha);
    return a >= eta && a <= kHalfPi - eta;
}

GapStats karatsuba_gap_fraction(double T, double epsilon) {
    double U = std::pow(T, 1.0 / 3.0 + 2.0 * epsilon);
    auto zs = find_zero_ordinates(T, T + U);
    double thr = 3.0 * std::log(std::log(T)) / std::log(T);
    int below = 0, gaps = 0;
    for (std::size_t i = 0; i + 1 < zs.size(); ++i, ++gaps)
        if (zs[i + 1] - zs[i] < thr)
            ++below;
    return {gaps > 0 ? static_cast<double>(below) / gaps : 0.0, gaps, thr};
}

}  // namespace jll
