#pragma once

namespace jll {

struct ThetaValue {
    double t;
    double theta;
};

// Riemann-Siegel theta, absolute error <= 1e-10 for t >= 10 (far better in
// practice). Throws domain_error for t < 2.
ThetaValue theta(double t);

// asymptotic-series evaluation with an explicit number of 1/t correction
// terms (0..8); exposed for the series-truncation stability test
double theta_series(double t, int terms);

double theta_deriv(double t);  // d theta/dt = (1/2) ln(t/2pi) - 1/(48 t^2) - ...
double theta_d2(double t);
double theta_d3(double t);

}  // namespace jll
