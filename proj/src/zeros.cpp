#include "jll/zeros.hpp"

#include <algorithm>
#include <cmath>

#include "jll/constants.hpp"
#include "jll/errors.hpp"
#include "jll/theta.hpp"
#include "jll/zeta.hpp"

namespace jll {

namespace {

double scan_step(double t, double oversample) {
    double freq = std::max(0.5, theta_deriv(std::max(t, 4.0)));
    return kPi / freq / oversample;
}

double refine(double a, double b, double za, double zb, double width) {
    while (b - a > width) {
        double m = 0.5 * (a + b);
        double zm = z(m).z;
        if ((zm < 0.0) == (za < 0.0)) {
            a = m;
            za = zm;
        } else {
            b = m;
            zb = zm;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<double> find_zero_ordinates(double lo, double hi, const ZeroScanOptions& opt) {
    if (!(lo < hi) || lo < 2.0)
        throw domain_error("find_zero_ordinates: need 2 <= lo < hi");
    std::vector<double> out;
    double t = lo;
    double zt = z(t).z;
    while (t < hi) {
        double tn = std::min(hi, t + scan_step(t, opt.oversample));
        double zn = z(tn).z;
        if ((zt < 0.0) != (zn < 0.0))
            out.push_back(refine(t, tn, zt, zn, opt.refine_width));
        t = tn;
        zt = zn;
    }
    return out;
}

std::vector<ZeroPair> find_zeros(double lo, double hi, const ZeroScanOptions& opt) {
    // scan a little past hi so every in-range zero has its successor
    double pad = hi + 8.0 * scan_step(hi, 1.0);
    auto zs = find_zero_ordinates(lo, pad, opt);
    std::vector<ZeroPair> pairs;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (zs[i] > hi)
            break;
        if (i + 1 < zs.size())
            pairs.push_back({zs[i], zs[i + 1], opt.refine_width});
    }
    return pairs;
}

void ZeroTable::ensure(double t) {
    if (t <= built_to_)
        return;
    double target = t + 2.0;
    ZeroScanOptions opt;
    auto more = find_zero_ordinates(built_to_, target, opt);
    zeros_.insert(zeros_.end(), more.begin(), more.end());
    built_to_ = target;
    // Turing-style sanity check against the main term of N(t)
    double n_main = theta(target).theta / kPi + 1.0;
    double s_here = static_cast<double>(zeros_.size()) - n_main;
    if (std::abs(s_here) > 4.0) {
        ZeroScanOptions finer;
        finer.oversample = opt.oversample * 4.0;
        zeros_ = find_zero_ordinates(10.0, target, finer);
        s_here = static_cast<double>(zeros_.size()) - theta(target).theta / kPi - 1.0;
        if (std::abs(s_here) > 4.0)
            throw resolution_error("zero enumeration incomplete: counting check failed");
    }
}

std::int64_t ZeroTable::count_below(double t) {
    ensure(t);
    auto it = std::upper_bound(zeros_.begin(), zeros_.end(), t);
    return static_cast<std::int64_t>(it - zeros_.begin());
}

SValue ZeroTable::s_of_t(double t) {
    if (t < 10.0)
        throw domain_error("s_of_t: t must be >= 10");
    double n = static_cast<double>(count_below(t));
    return {t, n - 1.0 - theta(t).theta / kPi};
}

}  // namespace jll
