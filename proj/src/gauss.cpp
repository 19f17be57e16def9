#include "jll/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "jll/constants.hpp"

namespace jll {

namespace {

// P_n(x) and P_n'(x) by recurrence
void legendre_pd(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

GaussRule make_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n / 2 + n % 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double p, dp;
        for (int it = 0; it < 60; ++it) {
            legendre_pd(n, x, p, dp);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        legendre_pd(n, x, p, dp);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

const PanelBasis& panel_basis(int n) {
    static std::mutex mu;
    static std::map<int, PanelBasis> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, PanelBasis(n)).first;
    return it->second;
}

PanelBasis::PanelBasis(int n) : n_(n), rule_(gauss_rule(n)), proj_(n * n) {
    for (int i = 0; i < n; ++i) {
        double x = rule_.x[i];
        double p0 = 1.0, p1 = x;
        proj_[0 * n + i] = 0.5 * rule_.w[i];
        if (n > 1)
            proj_[1 * n + i] = 1.5 * rule_.w[i] * x;
        for (int k = 2; k < n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
            proj_[k * n + i] = (2 * k + 1) * 0.5 * rule_.w[i] * p2;
        }
    }
}

void PanelBasis::coeffs(std::span<const double> v, std::span<double> c) const {
    for (int k = 0; k < n_; ++k) {
        double s = 0.0;
        const double* row = &proj_[k * n_];
        for (int i = 0; i < n_; ++i)
            s += row[i] * v[i];
        c[k] = s;
    }
}

double PanelBasis::eval(std::span<const double> c, double u) {
    double p0 = 1.0, p1 = u;
    int n = static_cast<int>(c.size());
    double s = c[0];
    if (n > 1)
        s += c[1] * u;
    for (int k = 2; k < n; ++k) {
        double p2 = ((2 * k - 1) * u * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
        s += c[k] * p2;
    }
    return s;
}

double PanelBasis::integral(std::span<const double> c, double u) {
    // int_{-1}^{u} P_k = (P_{k+1} - P_{k-1})/(2k+1), zero at u=-1 for k>=1
    int n = static_cast<int>(c.size());
    double s = c[0] * (u + 1.0);
    double p0 = 1.0, p1 = u;
    for (int k = 1; k < n; ++k) {
        double p2 = ((2 * k + 1) * u * p1 - k * p0) / (k + 1);
        s += c[k] * (p2 - p0) / (2 * k + 1);
        p0 = p1;
        p1 = p2;
    }
    return s;
}

void PanelBasis::node_integrals(std::span<const double> c, std::span<double> out) const {
    for (int i = 0; i < n_; ++i)
        out[i] = integral(c, rule_.x[i]);
}

}  // namespace jll
