#include "jll/zeta.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <vector>

#include "jll/constants.hpp"
#include "jll/errors.hpp"
#include "jll/theta.hpp"
#include "jll/vec_math.hpp"

namespace jll {

namespace {

// ------------------------------------------------------------ n-term tables
constexpr int kTableSize = 65536;  // covers RS main sums up to t ~ 2.7e10

struct TermTables {
    std::vector<double> ln_n;
    std::vector<double> inv_sqrt_n;
    TermTables() : ln_n(kTableSize), inv_sqrt_n(kTableSize) {
        ln_n[0] = 0.0;
        inv_sqrt_n[0] = 0.0;
        for (int n = 1; n < kTableSize; ++n) {
            ln_n[n] = std::log(static_cast<double>(n));
            inv_sqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
        }
    }
};

const TermTables& tables() {
    static TermTables t;
    return t;
}

// ----------------------------------------------- 2pi reduction (Cody-Waite)
// splits of 2pi with 26-bit mantissas so k*TP1, k*TP2 are exact for k < 2^27
constexpr double INV_2PI = 1.59154943091895335769e-01;

struct TwoPiSplit {
    double tp1, tp2, tp3;
    TwoPiSplit() {
        long double full = 6.283185307179586476925286766559005768L;
        tp1 = trunc26(static_cast<double>(full));
        tp2 = trunc26(static_cast<double>(full - static_cast<long double>(tp1)));
        tp3 = static_cast<double>(full - tp1 - tp2);
    }
    static double trunc26(double v) {
        std::uint64_t b;
        std::memcpy(&b, &v, 8);
        b &= ~((std::uint64_t(1) << 27) - 1);
        std::memcpy(&v, &b, 8);
        return v;
    }
};

inline double reduce_2pi(double x) {
    static const TwoPiSplit sp;
    double k = std::nearbyint(x * INV_2PI);
    return ((x - k * sp.tp1) - k * sp.tp2) - k * sp.tp3;
}

// ------------------------------------------- RS correction coefficient table
// C0..C3 as Chebyshev series on p in [0,1], built once by Cauchy-ring
// differentiation of psi(p) = cos(2pi(p^2-p-1/16))/cos(2pi p).
struct CorrectionTable {
    std::vector<double> cheb[4];

    static std::complex<double> psi(std::complex<double> z) {
        std::complex<double> a = z * z - z - 1.0 / 16.0;
        return std::cos(kTwoPi * a) / std::cos(kTwoPi * z);
    }

    // psi^{(k)}(p) for the orders in `orders`, one Cauchy ring per radius
    static void derivs(double p, const int* orders, const double* radii, int cnt,
                       double* out) {
        constexpr int M = 256;
        std::complex<double> ring[M];
        double last_r = -1.0;
        for (int q = 0; q < cnt; ++q) {
            double r = radii[q];
            if (r != last_r) {
                for (int m = 0; m < M; ++m) {
                    double ph = kTwoPi * m / M;
                    ring[m] = psi({p + r * std::cos(ph), r * std::sin(ph)});
                }
                last_r = r;
            }
            int k = orders[q];
            std::complex<double> s = 0.0;
            for (int m = 0; m < M; ++m) {
                double ph = -kTwoPi * k * m / M;
                s += ring[m] * std::complex<double>(std::cos(ph), std::sin(ph));
            }
            double fact = 1.0;
            for (int j = 2; j <= k; ++j)
                fact *= j;
            out[q] = (s / static_cast<double>(M)).real() * fact / std::pow(r, k);
        }
    }

    CorrectionTable() {
        constexpr int deg = 128;
        double pi2 = kPi * kPi;
        double pi4 = pi2 * pi2;
        double pi6 = pi4 * pi2;
        std::vector<double> samples[4];
        for (auto& s : samples)
            s.resize(deg + 1);
        static const int orders[] = {1, 2, 3, 5, 6, 9};
        static const double radii[] = {0.3, 0.3, 0.3, 0.45, 0.45, 0.6};
        for (int i = 0; i <= deg; ++i) {
            double p = 0.5 + 0.5 * std::cos(kPi * i / deg);
            double d[6];
            derivs(p, orders, radii, 6, d);
            double psi0 = psi({p, 0.0}).real();
            samples[0][i] = psi0;
            samples[1][i] = -d[2] / (96.0 * pi2);
            samples[2][i] = d[1] / (64.0 * pi2) + d[4] / (18432.0 * pi4);
            samples[3][i] = -d[0] / (64.0 * pi2) - d[3] / (3840.0 * pi4) -
                            d[5] / (5308416.0 * pi6);
        }
        // Chebyshev transform (type-I points), then truncate negligible tail
        for (int c = 0; c < 4; ++c) {
            std::vector<double> a(deg + 1);
            for (int k = 0; k <= deg; ++k) {
                double s = 0.5 * (samples[c][0] + (k % 2 ? -1.0 : 1.0) * samples[c][deg]);
                for (int i = 1; i < deg; ++i)
                    s += samples[c][i] * std::cos(kPi * k * i / deg);
                a[k] = 2.0 * s / deg;
            }
            a[0] *= 0.5;
            int keep = deg + 1;
            while (keep > 8 && std::abs(a[keep - 1]) < 1e-14)
                --keep;
            a.resize(keep);
            cheb[c] = std::move(a);
        }
    }

    double eval(int c, double p) const {
        const auto& a = cheb[c];
        double x = 2.0 * p - 1.0;
        double b1 = 0.0, b2 = 0.0;
        for (int k = static_cast<int>(a.size()) - 1; k >= 1; --k) {
            double b0 = 2.0 * x * b1 - b2 + a[k];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + a[0];
    }

    // Clenshaw across a batch of p values (independent lanes vectorize)
    void eval_many(int c, const double* p, double* out, int cnt) const {
        const auto& a = cheb[c];
        double x[64], b1[64], b2[64];
        for (int i = 0; i < cnt; ++i) {
            x[i] = 2.0 * p[i] - 1.0;
            b1[i] = 0.0;
            b2[i] = 0.0;
        }
        for (int k = static_cast<int>(a.size()) - 1; k >= 1; --k) {
            double ak = a[k];
            for (int i = 0; i < cnt; ++i) {
                double b0 = 2.0 * x[i] * b1[i] - b2[i] + ak;
                b2[i] = b1[i];
                b1[i] = b0;
            }
        }
        for (int i = 0; i < cnt; ++i)
            out[i] = x[i] * b1[i] - b2[i] + a[0];
    }
};

const CorrectionTable& corrections() {
    static CorrectionTable t;
    return t;
}

// ------------------------------------------------------------- EM zeta tail
// B_2k/(2k)! for k = 1..14
const double kB2kFact[] = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812523e-19,
    3.5347070396294675e-21,  -8.9535174270375469e-23};

}  // namespace

std::complex<double> zeta_half(double t) {
    if (t < 0.0)
        throw domain_error("zeta_half: t must be >= 0");
    const auto& tb = tables();
    int N = static_cast<int>(std::ceil(0.5 * t)) + 40;
    if (N + 1 >= kTableSize)
        throw domain_error("zeta_half: t too large for the Euler-Maclaurin branch");
    std::complex<double> s(0.5, t);

    // main sum over n < N with batched trig
    thread_local std::vector<double> args, sn, cn;
    args.resize(N - 1);
    sn.resize(N - 1);
    cn.resize(N - 1);
    for (int n = 1; n < N; ++n)
        args[n - 1] = reduce_2pi(-t * tb.ln_n[n]);
    sincos_many(args.data(), sn.data(), cn.data(), args.size());
    double re = 0.0, im = 0.0;
    for (int n = 1; n < N; ++n) {
        re += tb.inv_sqrt_n[n] * cn[n - 1];
        im += tb.inv_sqrt_n[n] * sn[n - 1];
    }
    std::complex<double> zv(re, im);

    double Nd = N;
    std::complex<double> Npow = std::exp(-s * std::log(Nd));  // N^{-s}
    zv += Nd * Npow / (s - 1.0) + 0.5 * Npow;

    // Bernoulli corrections: B_2k/(2k)! * N^{1-s-2k} * prod_{j=0}^{2k-2}(s+j)
    std::complex<double> prod = 1.0;
    std::complex<double> Nfac = Nd * Npow / (Nd * Nd);  // N^{-1-s}
    int j = 0;
    for (int k = 1; k <= 14; ++k) {
        while (j <= 2 * k - 2) {
            prod *= s + static_cast<double>(j);
            ++j;
        }
        zv += kB2kFact[k - 1] * Nfac * prod;
        Nfac /= Nd * Nd;
    }
    return zv;
}

void rs_correction_coeffs(double p, double out[4]) {
    const auto& ct = corrections();
    for (int c = 0; c < 4; ++c)
        out[c] = ct.eval(c, p);
}

namespace {

double rs_remainder(double tau, int N, double p, int depth) {
    if (depth <= 0)
        return 0.0;
    const auto& ct = corrections();
    double acc = 0.0, tpow = 1.0;
    for (int c = 0; c < depth && c < 4; ++c) {
        acc += ct.eval(c, p) * tpow;
        tpow /= tau;
    }
    double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
    return sign * acc / std::sqrt(tau);
}

}  // namespace

double z_rs(double t, int depth) {
    const auto& tb = tables();
    double tau = std::sqrt(t / kTwoPi);
    int N = static_cast<int>(tau);
    double p = tau - N;
    double th = theta(t).theta;
    double main = 0.0;
    double th_red = reduce_2pi(th);
    for (int n = 1; n <= N; ++n) {
        double arg = reduce_2pi(th_red - reduce_2pi(t * tb.ln_n[n]));
        main += tb.inv_sqrt_n[n] * std::cos(arg);
    }
    return 2.0 * main + rs_remainder(tau, N, p, depth);
}

ZValue z(double t) {
    if (t < 2.0)
        throw domain_error("z: t must be >= 2");
    if (t < kEmCutoff) {
        double th = theta(t).theta;
        std::complex<double> zv = zeta_half(t);
        return {t, std::cos(th) * zv.real() - std::sin(th) * zv.imag()};
    }
    return {t, z_rs(t, 4)};
}

void z2_panel(double tc, double h, std::span<const double> u, std::span<double> z2_out,
              int depth) {
    const std::size_t nn = u.size();
    if (nn > 64)
        throw domain_error("z2_panel: at most 64 nodes per panel");
    if (tc + h < kEmCutoff + 1.0) {
        // low range: pointwise Euler-Maclaurin
        for (std::size_t i = 0; i < nn; ++i) {
            double t = tc + h * u[i];
            std::complex<double> zv = zeta_half(t);
            z2_out[i] = std::norm(zv);
        }
        return;
    }
    if (tc - h < kEmCutoff + 1.0) {
        for (std::size_t i = 0; i < nn; ++i) {
            double t = tc + h * u[i];
            double zz = z(t).z;
            z2_out[i] = zz * zz;
        }
        return;
    }

    const auto& tb = tables();
    // cubic phase expansion around the panel center
    const double th0 = reduce_2pi(theta(tc).theta);
    const double d1 = theta_deriv(tc);
    const double d2 = 0.5 * theta_d2(tc);
    const double d3 = theta_d3(tc) / 6.0;

    double delta[64], pre[64], tau_i[64];
    int Nnode[64];
    for (std::size_t i = 0; i < nn; ++i) {
        double d = h * u[i];
        delta[i] = d;
        pre[i] = th0 + d * d * (d2 + d * d3);
        double ti = tc + d;
        tau_i[i] = std::sqrt(ti / kTwoPi);
        Nnode[i] = static_cast<int>(tau_i[i]);
    }
    int Nmin = Nnode[0], Nmax = Nnode[nn - 1];

    double acc[64] = {0.0};
    thread_local std::vector<double> base, slope, args, cosv;
    base.resize(Nmax + 1);
    slope.resize(Nmax + 1);
    args.resize(Nmax + 1);
    cosv.resize(Nmax + 1);
    for (int n = 1; n <= Nmax; ++n) {
        base[n] = reduce_2pi(-tc * tb.ln_n[n]);
        slope[n] = d1 - tb.ln_n[n];
    }
    const double* bs = base.data();
    const double* sl = slope.data();
    const double* is = tb.inv_sqrt_n.data();
    for (std::size_t i = 0; i < nn; ++i) {
        const double p = pre[i], d = delta[i];
        const int N = Nnode[i];
        double* ar = args.data();
        for (int n = 1; n <= N; ++n)
            ar[n] = p + bs[n] + d * sl[n];
        cos_many(ar + 1, cosv.data() + 1, N);
        const double* cv = cosv.data();
        double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0, s6 = 0, s7 = 0;
        int n = 1;
        for (; n + 7 <= N; n += 8) {
            s0 += is[n] * cv[n];
            s1 += is[n + 1] * cv[n + 1];
            s2 += is[n + 2] * cv[n + 2];
            s3 += is[n + 3] * cv[n + 3];
            s4 += is[n + 4] * cv[n + 4];
            s5 += is[n + 5] * cv[n + 5];
            s6 += is[n + 6] * cv[n + 6];
            s7 += is[n + 7] * cv[n + 7];
        }
        for (; n <= N; ++n)
            s0 += is[n] * cv[n];
        acc[i] = ((s0 + s1) + (s2 + s3)) + ((s4 + s5) + (s6 + s7));
    }
    // batched correction terms
    double pfrac[64], corr[4][64];
    for (std::size_t i = 0; i < nn; ++i)
        pfrac[i] = tau_i[i] - Nnode[i];
    const auto& ct = corrections();
    int use_depth = std::min(depth, 4);
    for (int c = 0; c < use_depth; ++c)
        ct.eval_many(c, pfrac, corr[c], static_cast<int>(nn));
    for (std::size_t i = 0; i < nn; ++i) {
        double tau = tau_i[i];
        double rem = 0.0, tpow = 1.0;
        for (int c = 0; c < use_depth; ++c) {
            rem += corr[c][i] * tpow;
            tpow /= tau;
        }
        double sign = (Nnode[i] % 2 == 1) ? 1.0 : -1.0;
        double zz = 2.0 * acc[i] + sign * rem / std::sqrt(tau);
        z2_out[i] = zz * zz;
    }
}

}  // namespace jll
