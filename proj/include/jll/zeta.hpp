#pragma once

#include <complex>
#include <span>

namespace jll {

struct ZValue {
    double t;
    double z;
};

// zeta(1/2 + i t) by Euler-Maclaurin; intended for 0 <= t <= ~5e4
std::complex<double> zeta_half(double t);

// Hardy Z by the Riemann-Siegel formula with `depth` correction terms beyond
// the main sum (0..4 => C0..C3; depth counts terms, default 4 = C0,C1,C2,C3)
double z_rs(double t, int depth = 4);

// Hardy Z: Euler-Maclaurin below the crossover, Riemann-Siegel above.
// Throws domain_error for t < 2. |error| <~ 1e-9 for t in [10, 1e7].
ZValue z(double t);

// crossover between the Euler-Maclaurin and Riemann-Siegel branches
inline constexpr double kEmCutoff = 3000.0;

// Z^2 at the panel nodes t = tc + h*u[i], u ascending in [-1,1]; uses a
// panel-local cubic phase expansion plus batched trig, which keeps the phase
// error ~1e-9 without per-node large-argument reduction. `evals` (optional)
// is incremented by the number of Z evaluations performed.
void z2_panel(double tc, double h, std::span<const double> u, std::span<double> z2_out,
              int depth = 4);

// Riemann-Siegel correction coefficients C0..C3 at p in [0,1] (exposed for
// validation against the fitted reference values)
void rs_correction_coeffs(double p, double out[4]);

}  // namespace jll
