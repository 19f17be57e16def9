#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace jll {

// Panel policy. Fine tier: Gauss-Legendre 15 on panels capped at a quarter
// oscillation period pi/(2 theta'), node values stored (oversample 30 wrt the
// mean zero gap pi/theta'). Tail tier: GL-26 on two-period panels (width
// 4pi/theta', oversample 6.5) storing only centered moments -- the far range
// is consumed exclusively through exponentially weighted sums, for which the
// moment kernel is certified below 1e-11 relative.
struct GridSpec {
    double fine_max = 1.5e5;
    double fine_oversample = 30.0;  // recorded in the cache header
    double tail_oversample = 6.5;
    int rs_depth = 4;  // Riemann-Siegel correction terms beyond the main sum

    static constexpr int kFineNodes = 15;
    static constexpr int kTailNodes = 26;
};

struct IntegralResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t evaluations = 0;
};

struct WeightedMoments {
    double j0 = 0.0;  // int Z^2 e^{-2t/x}
    double j1 = 0.0;  // int t Z^2 e^{-2t/x}
    double j2 = 0.0;  // int t^2 Z^2 e^{-2t/x}
    double t_cut = 0.0;
    double tail_bound = 0.0;
    std::int64_t evaluations = 0;
};

class SampleGrid {
  public:
    explicit SampleGrid(GridSpec spec = {}, int threads = 1);

    const GridSpec& spec() const { return spec_; }

    // tier construction (idempotent / append-only)
    void build_fine();
    void extend_tail(double t_max);
    double fine_max() const { return fine_t_.empty() ? 0.0 : fine_t_.back(); }
    double tail_max() const { return tail_t_.empty() ? fine_max() : tail_t_.back(); }
    bool built() const { return !fine_t_.empty(); }

    // cumulative Hardy-Littlewood integral F(T) = int_0^T Z^2
    double hl_cumulative(double T);

    IntegralResult integrate_z2(double a, double b, double tol = 0.0);  // tol 0 = no gate

    // int_0^{t_cut} t^k Z^2(t) e^{-2t/x} dt for k = 0,1,2 plus an explicit
    // bound on the discarded tail beyond t_cut. t_cut is clamped to a panel
    // boundary; the grid auto-extends to cover it.
    WeightedMoments weighted_moments(double x, double t_cut, bool with_t_powers);

    // truncation point: smallest t with e^{-2t/x} (x/2)(ln t + 3) * 2.06 <= bound
    static double truncation_point(double x, double abs_bound);

    // int_0^{t_cut} Z^2 e^{-2t/x} dt with t_cut = min(a x ln x, t*) and t*
    // chosen so the discarded tail stays below tol/10 of the value; the
    // truncation bound is folded into abs_error_estimate
    IntegralResult integrate_weighted(double x, double a_param, double tol = 1e-9);

    // fine-tier access for composite quadrature and ladder profiles
    std::size_t fine_panel_count() const { return fine_m0_.size(); }
    std::size_t fine_panel_index(double t) const;  // panel containing t
    double fine_panel_lo(std::size_t p) const { return fine_t_[p]; }
    double fine_panel_hi(std::size_t p) const { return fine_t_[p + 1]; }
    std::span<const double> fine_panel_z2(std::size_t p) const {
        return {&fine_z2_[p * GridSpec::kFineNodes], GridSpec::kFineNodes};
    }
    double fine_panel_m0(std::size_t p) const { return fine_m0_[p]; }

    // cache io (binary). The CSV format carries the fine-tier node samples
    // (t,z2 at 17 significant digits) under a header recording the grid
    // parameters; panel geometry is regenerated from those on import.
    void save(const std::string& path) const;
    bool load(const std::string& path);  // false if missing/incompatible
    void export_csv(const std::string& path) const;
    bool import_csv(const std::string& path);

    std::int64_t build_evaluations() const { return build_evals_; }

  private:
    void panel_moments(double lo, double hi, int nodes, double* z2_store, double& m0,
                       double& m1, double& m2);
    double partial_panel_z2(double lo, double hi) const;  // fresh evaluation
    double cumulative_at(double t) const;                 // F via stored panels

    GridSpec spec_;
    int threads_;

    std::vector<double> fine_t_;   // boundaries, fine_t_[0] == 0
    std::vector<double> fine_z2_;  // panel-major node values
    std::vector<double> fine_m0_, fine_m1_, fine_m2_;
    std::vector<double> fine_F_;  // cumulative at boundaries

    std::vector<double> tail_t_;
    std::vector<double> tail_m0_, tail_m1_, tail_m2_;
    std::vector<double> tail_F_;

    std::int64_t build_evals_ = 0;
    mutable std::int64_t fresh_evals_ = 0;
};

}  // namespace jll
