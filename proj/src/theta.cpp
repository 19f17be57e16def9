#include "jll/theta.hpp"

#include <cmath>
#include <complex>

#include "jll/constants.hpp"
#include "jll/errors.hpp"

namespace jll {

namespace {

// coefficient of t^-(2n-1): (1 - 2^(1-2n)) |B_2n| / (4n(2n-1))
const double kSeriesCoeff[] = {
    (1 - 0x1p-1) * (1.0 / 6.0) / 4.0,
    (1 - 0x1p-3) * (1.0 / 30.0) / 24.0,
    (1 - 0x1p-5) * (1.0 / 42.0) / 60.0,
    (1 - 0x1p-7) * (1.0 / 30.0) / 112.0,
    (1 - 0x1p-9) * (5.0 / 66.0) / 180.0,
    (1 - 0x1p-11) * (691.0 / 2730.0) / 264.0,
    (1 - 0x1p-13) * (7.0 / 6.0) / 364.0,
    (1 - 0x1p-15) * (3617.0 / 510.0) / 480.0,
};

// log Gamma by shifted Stirling, good to ~1e-14 for the arguments used here
std::complex<double> log_gamma(std::complex<double> z) {
    static const double b[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
                               1.0 / 1188, -691.0 / 360360, 1.0 / 156};
    std::complex<double> shift = 0.0;
    while (std::abs(z) < 16.0) {
        shift += std::log(z);
        z += 1.0;
    }
    std::complex<double> r = (z - 0.5) * std::log(z) - z + 0.5 * kLn2Pi;
    std::complex<double> zi = 1.0 / z, zp = zi;
    std::complex<double> z2 = zi * zi;
    for (double c : b) {
        r += c * zp;
        zp *= z2;
    }
    return r - shift;
}

}  // namespace

double theta_series(double t, int terms) {
    double th = 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0;
    double inv2 = 1.0 / (t * t), p = 1.0 / t;
    if (terms > 8)
        terms = 8;
    for (int n = 0; n < terms; ++n) {
        th += kSeriesCoeff[n] * p;
        p *= inv2;
    }
    return th;
}

ThetaValue theta(double t) {
    if (t < 2.0)
        throw domain_error("theta: t must be >= 2");
    if (t < 10.0) {
        std::complex<double> lg = log_gamma({0.25, 0.5 * t});
        return {t, lg.imag() - 0.5 * t * std::log(kPi)};
    }
    return {t, theta_series(t, 5)};
}

double theta_deriv(double t) {
    double d = 0.5 * std::log(t / kTwoPi);
    if (t >= 10.0)
        d += -kSeriesCoeff[0] / (t * t) - 3.0 * kSeriesCoeff[1] / (t * t * t * t);
    return d;
}

double theta_d2(double t) { return 0.5 / t + 2.0 * kSeriesCoeff[0] / (t * t * t); }

double theta_d3(double t) { return -0.5 / (t * t); }

}  // namespace jll
