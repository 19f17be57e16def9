#pragma once

#include <functional>
#include <vector>

#include "jll/grid.hpp"
#include "jll/primes.hpp"

namespace jll {

struct LadderConfig {
    double a_param = 7.0;         // mu[phi] = a phi ln phi, a in [7,8]
    double epsilon = 0.01;        // window exponents U0 = T^(1/3+2eps) etc.
    double tol_residual = 1e-8;   // relative residual target for solves
    double anchor_spacing = 500;  // profile anchor spacing (snapped to panels)
    double t0_min = 1e3;          // operational domain floor
};

struct LadderPoint {
    double T;
    double phi;       // the solution x of the integral equation
    double residual;  // (|J(phi) - F(T)| + tail bound) / F(T)
    double a_param;
};

struct PhiDerivatives {
    double phi_at;
    double phi_prime;
    double phi_second;
};

// Monotone interpolant of phi1 on a window, anchored by exact solves and
// propagated between anchors by integrating d(phi1)/dt = Z^2 / (2 Phi'),
// with Phi' refreshed at anchors and interpolated linearly in t. Inside each
// grid panel phi1 is the exact running integral of the degree-14 interpolant
// of the stored Z~^2 node values, so substitution identities hold to
// quadrature precision by construction.
class Phi1Profile {
  public:
    double t_begin() const { return t_begin_; }
    double t_end() const { return t_end_; }
    double eval(double t) const;     // phi1(t)
    double deriv(double t) const;    // Z~^2(t), the interpolant derivative
    double inverse(double y) const;  // t with phi1(t) = y
    double max_anchor_deviation() const { return max_anchor_dev_; }

    // Z^2 / Z~^2 in the profile's own convention: 2 Phi'_lin(t) / rho(span).
    // Smooth across zeros of Z, which makes endpoint-singular substitutions
    // (Chebyshev weight) integrable in the transformed variable.
    double z2_over_zt2(double t) const;

    std::size_t first_panel() const { return p_begin_; }
    std::size_t panel_count() const { return zt2_.size() / nodes_; }
    std::span<const double> node_zt2(std::size_t local_p) const {
        return {&zt2_[local_p * nodes_], static_cast<std::size_t>(nodes_)};
    }
    std::span<const double> node_phi1(std::size_t local_p) const {
        return {&phi1_nodes_[local_p * nodes_], static_cast<std::size_t>(nodes_)};
    }
    double panel_phi1_start(std::size_t local_p) const { return phi1_start_[local_p]; }

  private:
    friend class Ladder;
    const SampleGrid* grid_ = nullptr;
    std::size_t p_begin_ = 0;
    int nodes_ = GridSpec::kFineNodes;
    double t_begin_ = 0, t_end_ = 0;
    std::vector<double> zt2_;         // panel-major Z~^2 node values
    std::vector<double> phi1_nodes_;  // panel-major phi1 at nodes
    std::vector<double> phi1_start_;  // phi1 at panel left boundaries (+ final end)
    std::vector<double> span_t_;      // anchor ordinates
    std::vector<double> span_dphi_;   // Phi' at anchors
    std::vector<double> span_rho_;    // per-span renormalization
    double max_anchor_dev_ = 0.0;
};

class Ladder {
  public:
    Ladder(SampleGrid& grid, PrimeSieve& primes, LadderConfig cfg = {})
        : grid_(grid), primes_(primes), cfg_(cfg) {}

    const LadderConfig& config() const { return cfg_; }

    // solve int_0^{mu[x]} Z^2 e^{-2t/x} dt = F(T) for x on the bracket
    // [T, 2.2T] (auto-widened); verifies the residual map is increasing at 16
    // probes before refining. fixed_t_cut > 0 pins the truncation point, which
    // chord evaluations use so the truncation bias cancels in differences.
    LadderPoint solve(double T, double fixed_t_cut = 0.0);

    double phi1(double T) { return 0.5 * solve(T).phi; }
    double phi1_inverse(double y, double tol = 1e-6);

    double phi_prime(double phi);   // Phi'_phi[phi]
    double phi_second(double phi);  // Phi''_phiphi[phi]
    PhiDerivatives derivatives(double phi);

    static double g_weight(double t, double phi);

    double ztilde2(double t);  // Z^2(t) / (2 Phi'[phi(t)])

    Phi1Profile profile(double T, double U, int check_points = 2);

    // window lengths from the configured epsilon
    double window_u0(double T) const;  // T^(1/3+2eps)
    double window_u1(double T) const;  // T^(7/8+2eps)
    double window_u2(double T) const;  // T^(1/2+eps)

    SampleGrid& grid() { return grid_; }
    PrimeSieve& primes() { return primes_; }

  private:
    double j_weighted(double x, double t_cut) const;
    double solve_t_cut(double x, double F_T) const;

    SampleGrid& grid_;
    PrimeSieve& primes_;
    LadderConfig cfg_;
    std::vector<std::pair<double, double>> phi_memo_;
};

// Composite quadrature over a profile window:
//   int_a^b f(phi1(t)) * weight(t) dt
// weight z2 reuses the grid samples, ztilde2 the profile's consistent
// derivative, z4_of_phi1_times_z2 evaluates Z^4 at phi1(t) afresh.
enum class CompositeWeight { z2, ztilde2, z4_of_phi1_times_z2 };

IntegralResult integrate_composite(SampleGrid& grid, const Phi1Profile& prof,
                                   const std::function<double(double)>& f,
                                   CompositeWeight weight, double a, double b,
                                   double tol = 0.0);  // tol 0 = no gate

}  // namespace jll
