#include "jll/vec_math.hpp"

#include <cmath>

namespace jll {

namespace {

// fdlibm kernel coefficients, |r| <= pi/4
constexpr double S1 = -1.66666666666666324348e-01;
constexpr double S2 = 8.33333333332248946124e-03;
constexpr double S3 = -1.98412698298579493134e-04;
constexpr double S4 = 2.75573137070700676789e-06;
constexpr double S5 = -2.50507602534068634195e-08;
constexpr double S6 = 1.58969099521155010221e-10;

constexpr double C1 = 4.16666666666666019037e-02;
constexpr double C2 = -1.38888888888741095749e-03;
constexpr double C3 = 2.48015872894767294178e-05;
constexpr double C4 = -2.75573143513906633035e-07;
constexpr double C5 = 2.08757232129817482790e-09;
constexpr double C6 = -1.13596475577881948265e-11;

constexpr double TWO_OVER_PI = 6.36619772367581382433e-01;
constexpr double PIO2_1 = 1.57079632673412561417e+00;   // first 33 bits of pi/2
constexpr double PIO2_1T = 6.07710050650619224932e-11;  // pi/2 - PIO2_1

inline double sin_poly(double r, double r2) {
    return r + r * r2 * (S1 + r2 * (S2 + r2 * (S3 + r2 * (S4 + r2 * (S5 + r2 * S6)))));
}

inline double cos_poly(double r2) {
    return 1.0 - 0.5 * r2 +
           r2 * r2 * (C1 + r2 * (C2 + r2 * (C3 + r2 * (C4 + r2 * (C5 + r2 * C6)))));
}

}  // namespace

void cos_many(const double* arg, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double x = arg[i];
        double k = std::nearbyint(x * TWO_OVER_PI);
        double r = (x - k * PIO2_1) - k * PIO2_1T;
        double r2 = r * r;
        double sp = sin_poly(r, r2);
        double cp = cos_poly(r2);
        // quadrant q = k mod 4: cos -> {cp, -sp, -cp, sp}
        double q = k - 4.0 * std::floor(k * 0.25);
        double odd = q - 2.0 * std::floor(q * 0.5);    // q & 1
        double hi = std::floor(q * 0.5);               // (q >> 1) & 1
        double base = (1.0 - odd) * cp - odd * sp;
        out[i] = (1.0 - 2.0 * hi) * base;
    }
}

void sincos_many(const double* arg, double* s, double* c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double x = arg[i];
        double k = std::nearbyint(x * TWO_OVER_PI);
        double r = (x - k * PIO2_1) - k * PIO2_1T;
        double r2 = r * r;
        double sp = sin_poly(r, r2);
        double cp = cos_poly(r2);
        double q = k - 4.0 * std::floor(k * 0.25);
        double odd = q - 2.0 * std::floor(q * 0.5);
        double hi = std::floor(q * 0.5);
        double sign = 1.0 - 2.0 * hi;
        // sin -> {sp, cp, -sp, -cp},  cos -> {cp, -sp, -cp, sp}
        s[i] = sign * ((1.0 - odd) * sp + odd * cp);
        c[i] = sign * ((1.0 - odd) * cp - odd * sp);
    }
}

}  // namespace jll
