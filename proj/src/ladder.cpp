#include "jll/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "jll/constants.hpp"
#include "jll/errors.hpp"
#include "jll/gauss.hpp"
#include "jll/theta.hpp"
#include "jll/zeta.hpp"

namespace jll {

namespace {

// bracketed Brent; f must carry the bracket. Runs to both the residual
// target and a tight x-interval so results are smooth in the parameters.
template <class F>
double brent_root(F&& f, double a, double b, double fa, double fb, double xtol,
                  double ftol, int max_iter = 200) {
    if (fa == 0.0)
        return a;
    if (fb == 0.0)
        return b;
    if ((fa < 0.0) == (fb < 0.0))
        throw bracket_error("brent_root: endpoints do not bracket a root");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb < 0.0) == (fc < 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        double m = 0.5 * (c - b);
        if (std::abs(fb) <= ftol && std::abs(m) <= xtol)
            return b;
        if (std::abs(e) < xtol || std::abs(fa) <= std::abs(fb)) {
            d = e = m;  // bisection
        } else {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                double r = fb / fc, u = fa / fc;
                p = s * (2.0 * m * u * (u - r) - (b - a) * (r - 1.0));
                q = (u - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
                q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::abs(xtol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = e = m;
            }
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > xtol) ? d : (m > 0 ? xtol : -xtol);
        fb = f(b);
        if (fb == 0.0)
            return b;
    }
    throw tolerance_error("brent_root: iteration budget exhausted");
}

}  // namespace

double Ladder::window_u0(double T) const {
    return std::pow(T, 1.0 / 3.0 + 2.0 * cfg_.epsilon);
}
double Ladder::window_u1(double T) const {
    return std::pow(T, 7.0 / 8.0 + 2.0 * cfg_.epsilon);
}
double Ladder::window_u2(double T) const { return std::pow(T, 0.5 + cfg_.epsilon); }

double Ladder::j_weighted(double x, double t_cut) const {
    return const_cast<SampleGrid&>(grid_).weighted_moments(x, t_cut, false).j0;
}

double Ladder::solve_t_cut(double x, double F_T) const {
    double by_tol = SampleGrid::truncation_point(x, cfg_.tol_residual * F_T * 0.1);
    double mu = cfg_.a_param * x * std::log(x);
    return std::min(by_tol, mu);
}

LadderPoint Ladder::solve(double T, double fixed_t_cut) {
    if (T < cfg_.t0_min)
        throw domain_error("solve_ladder: T below the operational floor");
    if (cfg_.a_param < 7.0 || cfg_.a_param > 8.0)
        throw domain_error("solve_ladder: a_param must lie in [7,8]");
    double F_T = grid_.hl_cumulative(T);
    double ftol = cfg_.tol_residual * F_T;

    double lo = T, hi = 2.2 * T;
    auto eval = [&](double x) {
        double cut = fixed_t_cut > 0.0 ? fixed_t_cut : solve_t_cut(x, F_T);
        return j_weighted(x, cut) - F_T;
    };
    double flo = eval(lo), fhi = eval(hi);
    for (int widen = 0; (flo < 0.0) == (fhi < 0.0); ++widen) {
        if (widen >= 6) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "solve_ladder: no sign change on [%g, %g], residuals %g / %g",
                          lo, hi, flo, fhi);
            throw bracket_error(msg);
        }
        lo = std::max(T * 0.5, lo / 1.3);
        hi = std::min(4.0 * T, hi * 1.3);
        flo = eval(lo);
        fhi = eval(hi);
    }

    // residual map must be increasing across the bracket (checked, not assumed)
    constexpr int kProbes = 16;
    double px[kProbes], pf[kProbes];
    for (int i = 0; i < kProbes; ++i) {
        px[i] = lo + (hi - lo) * i / (kProbes - 1);
        pf[i] = (i == 0) ? flo : (i == kProbes - 1 ? fhi : eval(px[i]));
    }
    for (int i = 1; i < kProbes; ++i) {
        if (pf[i] - pf[i - 1] < -1e-12 * F_T) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "solve_ladder: residual map not increasing near x=%g", px[i]);
            throw monotonicity_error(msg);
        }
    }
    int k = 0;
    while (k + 1 < kProbes && (pf[k + 1] < 0.0) == (pf[0] < 0.0))
        ++k;
    double a = px[k], b = px[std::min(k + 1, kProbes - 1)];
    double root = brent_root(eval, a, b, pf[k], pf[std::min(k + 1, kProbes - 1)],
                             1e-12 * T, ftol);

    double cut = fixed_t_cut > 0.0 ? fixed_t_cut : solve_t_cut(root, F_T);
    auto m = grid_.weighted_moments(root, cut, false);
    double residual = (std::abs(m.j0 - F_T) + m.tail_bound) / F_T;
    return {T, root, residual, cfg_.a_param};
}

double Ladder::phi1_inverse(double y, double tol) {
    if (y < cfg_.t0_min)
        throw domain_error("phi1_inverse: y below the operational floor");
    double seed = 2.0 * (1.0 - kEuler) * static_cast<double>(primes_.prime_pi(2.0 * y));
    double lo = y, hi = y + std::max(seed, 4.0);
    auto f = [&](double t) { return phi1(t) - y; };
    double flo = f(lo), fhi = f(hi);
    for (int widen = 0; (flo < 0.0) == (fhi < 0.0); ++widen) {
        if (widen >= 5)
            throw bracket_error("phi1_inverse: could not bracket the preimage");
        hi += seed;
        fhi = f(hi);
    }
    return brent_root(f, lo, hi, flo, fhi, 1e-13 * y, tol);
}

double Ladder::phi_prime(double phi) {
    if (phi < cfg_.t0_min)
        throw domain_error("phi_prime: phi below the operational floor");
    double F_hat = phi * std::log(phi);  // scale only, drives the cutoff
    double cut = std::min(SampleGrid::truncation_point(phi, 1e-10 * F_hat),
                          cfg_.a_param * phi * std::log(phi));
    auto m = grid_.weighted_moments(phi, cut, true);
    double first = 2.0 / (phi * phi) * m.j1;
    // boundary term: Z^2(mu) e^{-2 mu/phi} d mu/d phi with mu = a phi ln phi
    double mu = cfg_.a_param * phi * std::log(phi);
    double damp = std::pow(phi, -2.0 * cfg_.a_param);
    double zmu = z(mu).z;
    double second = zmu * zmu * damp * cfg_.a_param * (std::log(phi) + 1.0);
    return first + second;
}

double Ladder::phi_second(double phi) {
    if (phi < cfg_.t0_min)
        throw domain_error("phi_second: phi below the operational floor");
    double F_hat = phi * std::log(phi);
    double cut = std::min(SampleGrid::truncation_point(phi, 1e-10 * F_hat),
                          cfg_.a_param * phi * std::log(phi));
    auto m = grid_.weighted_moments(phi, cut, true);
    double main = 4.0 / (phi * phi * phi) * (m.j2 / phi - m.j1);

    // Q[phi]: boundary bundle, exponentially damped by phi^(-2a)
    double a = cfg_.a_param;
    double lnphi = std::log(phi);
    double mu = a * phi * lnphi;
    double mu1 = a * (lnphi + 1.0);  // d mu / d phi
    double mu2 = a / phi;            // d2 mu / d phi2
    double damp = std::pow(phi, -2.0 * a);
    double zmu = z(mu).z;
    double h = 1e-4;
    double zp = (z(mu + h).z - z(mu - h).z) / (2.0 * h);
    double q = damp * ((4.0 / (phi * phi)) * zmu * zmu * mu * mu1 -
                       (2.0 / phi) * zmu * zmu * mu1 * mu1 + 2.0 * zmu * zp * mu1 * mu1 +
                       zmu * zmu * mu2);
    return main + q;
}

PhiDerivatives Ladder::derivatives(double phi) {
    return {phi, phi_prime(phi), phi_second(phi)};
}

double Ladder::g_weight(double t, double phi) {
    return t * (t / phi - 1.0) * std::exp(-2.0 * t / phi);
}

double Ladder::ztilde2(double t) {
    if (t < cfg_.t0_min)
        throw domain_error("ztilde2: t below the operational floor");
    double phi = 0.0;
    for (const auto& [tt, pp] : phi_memo_)
        if (tt == t)
            phi = pp;
    if (phi == 0.0) {
        phi = solve(t).phi;
        phi_memo_.emplace_back(t, phi);
        if (phi_memo_.size() > 64)
            phi_memo_.erase(phi_memo_.begin());
    }
    double zz = z(t).z;
    return zz * zz / (2.0 * phi_prime(phi));
}

// ---------------------------------------------------------------- profile
Phi1Profile Ladder::profile(double T, double U, int check_points) {
    if (U <= 0.0 || U > T)
        throw domain_error("profile: need 0 < U <= T");
    if (T + U > grid_.fine_max())
        throw domain_error("profile: window exceeds the fine sample tier");
    grid_.build_fine();

    Phi1Profile prof;
    prof.grid_ = &grid_;
    const int nodes = GridSpec::kFineNodes;
    prof.nodes_ = nodes;

    std::size_t p0 = grid_.fine_panel_index(T);
    std::size_t p1 = grid_.fine_panel_index(T + U) + 1;  // one past
    prof.p_begin_ = p0;
    prof.t_begin_ = grid_.fine_panel_lo(p0);
    prof.t_end_ = grid_.fine_panel_hi(p1 - 1);

    // anchors at panel boundaries, roughly anchor_spacing apart
    std::vector<std::size_t> anchors;
    anchors.push_back(p0);
    double next = prof.t_begin_ + cfg_.anchor_spacing;
    for (std::size_t p = p0 + 1; p < p1; ++p) {
        if (grid_.fine_panel_lo(p) >= next) {
            anchors.push_back(p);
            next = grid_.fine_panel_lo(p) + cfg_.anchor_spacing;
        }
    }
    anchors.push_back(p1);

    std::vector<double> a_phi1(anchors.size()), a_dphi(anchors.size());
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        double t = (anchors[k] == p1) ? prof.t_end_ : grid_.fine_panel_lo(anchors[k]);
        double phi = solve(t).phi;
        a_phi1[k] = 0.5 * phi;
        a_dphi[k] = phi_prime(phi);
        prof.span_t_.push_back(t);
        prof.span_dphi_.push_back(a_dphi[k]);
    }

    std::size_t P = p1 - p0;
    prof.zt2_.resize(P * nodes);
    prof.phi1_nodes_.resize(P * nodes);
    prof.phi1_start_.resize(P + 1);

    const PanelBasis& basis = panel_basis(nodes);
    const GaussRule& rule = gauss_rule(nodes);

    for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
        std::size_t pa = anchors[k], pb = anchors[k + 1];
        double ta = grid_.fine_panel_lo(pa);
        double tb = (pb == p1) ? prof.t_end_ : grid_.fine_panel_lo(pb);
        double slope = (a_dphi[k + 1] - a_dphi[k]) / (tb - ta);
        // raw pass: integrate z2 / (2 Phi'_lin)
        double raw = 0.0;
        for (std::size_t p = pa; p < pb; ++p) {
            auto z2v = grid_.fine_panel_z2(p);
            double lo = grid_.fine_panel_lo(p), hi = grid_.fine_panel_hi(p);
            double h = 0.5 * (hi - lo), c = 0.5 * (lo + hi);
            for (int i = 0; i < nodes; ++i) {
                double t = c + h * rule.x[i];
                double dphi = a_dphi[k] + slope * (t - ta);
                prof.zt2_[(p - p0) * nodes + i] = z2v[i] / (2.0 * dphi);
            }
            for (int i = 0; i < nodes; ++i)
                raw += h * rule.w[i] * prof.zt2_[(p - p0) * nodes + i];
        }
        double want = a_phi1[k + 1] - a_phi1[k];
        double rho = want / raw;
        if (!(rho > 0.9 && rho < 1.1))
            throw tolerance_error("profile: anchor renormalization out of range");
        prof.span_rho_.push_back(rho);
        // second pass: scale and accumulate node-level running integrals
        double cum = a_phi1[k];
        double coeff[GridSpec::kFineNodes], partial[GridSpec::kFineNodes];
        for (std::size_t p = pa; p < pb; ++p) {
            double lo = grid_.fine_panel_lo(p), hi = grid_.fine_panel_hi(p);
            double h = 0.5 * (hi - lo);
            double* zt = &prof.zt2_[(p - p0) * nodes];
            for (int i = 0; i < nodes; ++i)
                zt[i] *= rho;
            prof.phi1_start_[p - p0] = cum;
            basis.coeffs({zt, static_cast<std::size_t>(nodes)}, coeff);
            basis.node_integrals(coeff, partial);
            for (int i = 0; i < nodes; ++i)
                prof.phi1_nodes_[(p - p0) * nodes + i] = cum + h * partial[i];
            cum += h * PanelBasis::integral({coeff, static_cast<std::size_t>(nodes)}, 1.0);
        }
        // snap exactly to the anchor (rho guarantees this up to roundoff)
        cum = a_phi1[k + 1];
        if (pb == p1)
            prof.phi1_start_[P] = cum;
    }

    // measured deviation at mid-span points against direct solves
    for (int c = 0; c < check_points && anchors.size() >= 2; ++c) {
        std::size_t k = (c + 1) * (anchors.size() - 1) / (check_points + 1);
        std::size_t pm = (anchors[k] + anchors[std::min(k + 1, anchors.size() - 1)]) / 2;
        pm = std::min(std::max(pm, p0), p1 - 1);
        double tm = grid_.fine_panel_lo(pm);
        double direct = 0.5 * solve(tm).phi;
        double dev = std::abs(prof.phi1_start_[pm - p0] - direct) / direct;
        prof.max_anchor_dev_ = std::max(prof.max_anchor_dev_, dev);
    }
    if (prof.max_anchor_dev_ > 1e-5)
        throw tolerance_error("profile: mid-anchor deviation above 1e-5; "
                              "reduce anchor_spacing");
    return prof;
}

// --------------------------------------------------------- profile queries
namespace {
thread_local std::vector<double> tl_coeff;
}

double Phi1Profile::eval(double t) const {
    if (t < t_begin_ || t > t_end_)
        throw domain_error("profile eval: t outside the window");
    std::size_t p = grid_->fine_panel_index(std::min(t, t_end_ * (1 - 1e-16)));
    std::size_t lp = p - p_begin_;
    double lo = grid_->fine_panel_lo(p), hi = grid_->fine_panel_hi(p);
    double h = 0.5 * (hi - lo), u = (t - 0.5 * (lo + hi)) / h;
    tl_coeff.resize(nodes_);
    panel_basis(nodes_).coeffs(node_zt2(lp), tl_coeff);
    return phi1_start_[lp] + h * PanelBasis::integral(tl_coeff, u);
}

double Phi1Profile::deriv(double t) const {
    std::size_t p = grid_->fine_panel_index(std::min(t, t_end_ * (1 - 1e-16)));
    std::size_t lp = p - p_begin_;
    double lo = grid_->fine_panel_lo(p), hi = grid_->fine_panel_hi(p);
    double u = (t - 0.5 * (lo + hi)) / (0.5 * (hi - lo));
    tl_coeff.resize(nodes_);
    panel_basis(nodes_).coeffs(node_zt2(lp), tl_coeff);
    return PanelBasis::eval(tl_coeff, u);
}

double Phi1Profile::z2_over_zt2(double t) const {
    if (t < t_begin_ || t > t_end_)
        throw domain_error("z2_over_zt2: t outside the window");
    std::size_t k = 0;
    while (k + 2 < span_t_.size() && span_t_[k + 1] <= t)
        ++k;
    double ta = span_t_[k], tb = span_t_[k + 1];
    double dphi = span_dphi_[k] + (span_dphi_[k + 1] - span_dphi_[k]) * (t - ta) / (tb - ta);
    return 2.0 * dphi / span_rho_[k];
}

double Phi1Profile::inverse(double y) const {
    std::size_t P = panel_count();
    if (y < phi1_start_[0] || y > phi1_start_[P])
        throw domain_error("profile inverse: y outside the image");
    std::size_t lo = 0, hi = P;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        (phi1_start_[mid] <= y ? lo : hi) = mid;
    }
    double a = grid_->fine_panel_lo(p_begin_ + lo), b = grid_->fine_panel_hi(p_begin_ + lo);
    // bisection inside the panel (phi1 is monotone, possibly flat at zeros)
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (a + b);
        if (b - a < 1e-13 * std::max(1.0, std::abs(m)))
            return m;
        (eval(m) <= y ? a : b) = m;
    }
    return 0.5 * (a + b);
}

// ------------------------------------------------------------- composite
IntegralResult integrate_composite(SampleGrid& grid, const Phi1Profile& prof,
                                   const std::function<double(double)>& f,
                                   CompositeWeight weight, double a, double b,
                                   double tol) {
    if (a < prof.t_begin() || b > prof.t_end() || a > b)
        throw domain_error("integrate_composite: [a,b] outside the profile window");
    if (a == b)
        return {0.0, 0.0, 0};
    const int nodes = GridSpec::kFineNodes;
    const GaussRule& rule = gauss_rule(nodes);
    std::size_t pa = grid.fine_panel_index(a);
    std::size_t pb = grid.fine_panel_index(b * (1 - 1e-16));
    std::int64_t evals = 0;

    auto node_weight = [&](std::size_t p, int i, double t) -> double {
        switch (weight) {
            case CompositeWeight::z2:
                return grid.fine_panel_z2(p)[i];
            case CompositeWeight::ztilde2:
                return prof.node_zt2(p - prof.first_panel())[i];
            case CompositeWeight::z4_of_phi1_times_z2: {
                double y = prof.node_phi1(p - prof.first_panel())[i];
                double zy = z(y).z;
                evals += 1;
                return zy * zy * zy * zy * grid.fine_panel_z2(p)[i];
            }
        }
        return 0.0;
    };

    double total = 0.0, cst = 0.0;
    auto add = [&](double v) {
        double yv = v - cst;
        double tv = total + yv;
        cst = (tv - total) - yv;
        total = tv;
    };

    for (std::size_t p = pa; p <= pb; ++p) {
        double lo = grid.fine_panel_lo(p), hi = grid.fine_panel_hi(p);
        double h = 0.5 * (hi - lo), c = 0.5 * (lo + hi);
        bool full = (lo >= a) && (hi <= b);
        if (full) {
            double s = 0.0;
            for (int i = 0; i < nodes; ++i) {
                double t = c + h * rule.x[i];
                double y = prof.node_phi1(p - prof.first_panel())[i];
                s += rule.w[i] * f(y) * node_weight(p, i, t);
            }
            add(h * s);
        } else {
            // partial panel: fresh nodes mapped onto the clipped piece
            double lo2 = std::max(lo, a), hi2 = std::min(hi, b);
            if (hi2 <= lo2)
                continue;
            double hh = 0.5 * (hi2 - lo2), cc = 0.5 * (lo2 + hi2);
            double z2f[GridSpec::kFineNodes];
            if (weight != CompositeWeight::ztilde2) {
                double uu[GridSpec::kFineNodes];
                for (int i = 0; i < nodes; ++i)
                    uu[i] = cc + hh * rule.x[i];
                // fresh Z^2 at the mapped nodes
                for (int i = 0; i < nodes; ++i) {
                    double zz = z(uu[i]).z;
                    z2f[i] = zz * zz;
                    ++evals;
                }
            }
            double s = 0.0;
            for (int i = 0; i < nodes; ++i) {
                double t = cc + hh * rule.x[i];
                double y = prof.eval(t);
                double w;
                if (weight == CompositeWeight::ztilde2)
                    w = prof.deriv(t);
                else if (weight == CompositeWeight::z2)
                    w = z2f[i];
                else {
                    double zy = z(y).z;
                    ++evals;
                    w = zy * zy * zy * zy * z2f[i];
                }
                s += rule.w[i] * f(y) * w;
            }
            add(hh * s);
        }
    }
    double est = 1e-13 * std::abs(total) + 1e-12;
    if (tol > 0.0 && est > tol)
        throw tolerance_error("integrate_composite: tolerance below the grid floor");
    return {total, est, evals};
}

}  // namespace jll
