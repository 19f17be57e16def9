#include "jll/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <thread>

#include "jll/constants.hpp"
#include "jll/errors.hpp"
#include "jll/gauss.hpp"
#include "jll/theta.hpp"
#include "jll/zeta.hpp"

namespace jll {

namespace {

double clamped_freq(double t) { return std::max(0.5, theta_deriv(std::max(t, 4.0))); }

// sequential panel boundaries over [lo, hi]; width factor k means
// width = k * pi / theta'(t). Near t = 0 the width is additionally capped by
// the distance to the zeta-pole singularities of Z^2 at t = +-i/2, which
// otherwise stall the panel rule's convergence.
std::vector<double> make_boundaries(double lo, double hi, double k) {
    std::vector<double> b;
    b.push_back(lo);
    double t = lo;
    while (t < hi) {
        double w = k * kPi / clamped_freq(t + k * kPi / clamped_freq(t));
        w = std::min(w, std::max(0.25, 0.75 * t));
        t = std::min(hi, t + w);
        b.push_back(t);
    }
    return b;
}

struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

}  // namespace

SampleGrid::SampleGrid(GridSpec spec, int threads) : spec_(spec), threads_(std::max(1, threads)) {}

void SampleGrid::panel_moments(double lo, double hi, int nodes, double* z2_store,
                               double& m0, double& m1, double& m2) {
    const GaussRule& rule = gauss_rule(nodes);
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double buf[64];
    double* z2 = z2_store ? z2_store : buf;
    z2_panel(c, h, rule.x, {z2, static_cast<std::size_t>(nodes)}, spec_.rs_depth);
    double a0 = 0, a1 = 0, a2 = 0;
    for (int i = 0; i < nodes; ++i) {
        double wz = rule.w[i] * z2[i];
        double d = h * rule.x[i];
        a0 += wz;
        a1 += wz * d;
        a2 += wz * d * d;
    }
    m0 = h * a0;
    m1 = h * a1;
    m2 = h * a2;
}

void SampleGrid::build_fine() {
    if (!fine_t_.empty())
        return;
    fine_t_ = make_boundaries(0.0, spec_.fine_max, 0.5);
    std::size_t P = fine_t_.size() - 1;
    fine_z2_.resize(P * GridSpec::kFineNodes);
    fine_m0_.resize(P);
    fine_m1_.resize(P);
    fine_m2_.resize(P);
    fine_F_.resize(P + 1);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p)
            panel_moments(fine_t_[p], fine_t_[p + 1], GridSpec::kFineNodes,
                          &fine_z2_[p * GridSpec::kFineNodes], fine_m0_[p], fine_m1_[p],
                          fine_m2_[p]);
    };
    if (threads_ > 1) {
        std::vector<std::thread> ts;
        std::size_t chunk = (P + threads_ - 1) / threads_;
        for (int k = 0; k < threads_; ++k) {
            std::size_t b = std::min(P, k * chunk), e = std::min(P, b + chunk);
            if (b < e)
                ts.emplace_back(work, b, e);
        }
        for (auto& th : ts)
            th.join();
    } else {
        work(0, P);
    }
    build_evals_ += static_cast<std::int64_t>(P) * GridSpec::kFineNodes;

    Kahan F;
    fine_F_[0] = 0.0;
    for (std::size_t p = 0; p < P; ++p) {
        F.add(fine_m0_[p]);
        fine_F_[p + 1] = F.s;
    }
}

void SampleGrid::extend_tail(double t_max) {
    build_fine();
    if (t_max <= tail_max())
        return;
    if (tail_t_.empty()) {
        tail_t_.push_back(fine_t_.back());
        tail_F_.push_back(fine_F_.back());
    }
    double lo = tail_t_.back();
    auto bounds = make_boundaries(lo, t_max, 4.0);
    std::size_t Q0 = tail_m0_.size(), add = bounds.size() - 1;
    tail_t_.insert(tail_t_.end(), bounds.begin() + 1, bounds.end());
    tail_m0_.resize(Q0 + add);
    tail_m1_.resize(Q0 + add);
    tail_m2_.resize(Q0 + add);
    tail_F_.resize(Q0 + add + 1);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t q = begin; q < end; ++q)
            panel_moments(tail_t_[Q0 + q], tail_t_[Q0 + q + 1], GridSpec::kTailNodes,
                          nullptr, tail_m0_[Q0 + q], tail_m1_[Q0 + q], tail_m2_[Q0 + q]);
    };
    if (threads_ > 1) {
        std::vector<std::thread> ts;
        std::size_t chunk = (add + threads_ - 1) / threads_;
        for (int k = 0; k < threads_; ++k) {
            std::size_t b = std::min(add, k * chunk), e = std::min(add, b + chunk);
            if (b < e)
                ts.emplace_back(work, b, e);
        }
        for (auto& th : ts)
            th.join();
    } else {
        work(0, add);
    }
    build_evals_ += static_cast<std::int64_t>(add) * GridSpec::kTailNodes;

    // cumulative continues from the last checkpoint
    Kahan F;
    F.s = tail_F_[Q0];
    for (std::size_t q = Q0; q < tail_m0_.size(); ++q) {
        F.add(tail_m0_[q]);
        tail_F_[q + 1] = F.s;
    }
}

std::size_t SampleGrid::fine_panel_index(double t) const {
    auto it = std::upper_bound(fine_t_.begin(), fine_t_.end(), t);
    if (it == fine_t_.begin() || it == fine_t_.end())
        throw domain_error("fine_panel_index: t outside the fine tier");
    return static_cast<std::size_t>(it - fine_t_.begin()) - 1;
}

double SampleGrid::partial_panel_z2(double lo, double hi) const {
    if (hi <= lo)
        return 0.0;
    const GaussRule& rule = gauss_rule(GridSpec::kFineNodes);
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double z2[GridSpec::kFineNodes];
    z2_panel(c, h, rule.x, z2, spec_.rs_depth);
    double s = 0.0;
    for (int i = 0; i < GridSpec::kFineNodes; ++i)
        s += rule.w[i] * z2[i];
    fresh_evals_ += GridSpec::kFineNodes;
    return h * s;
}

double SampleGrid::cumulative_at(double t) const {
    if (t <= 0.0)
        return 0.0;
    if (t <= fine_max()) {
        auto it = std::upper_bound(fine_t_.begin(), fine_t_.end(), t);
        std::size_t p = static_cast<std::size_t>(it - fine_t_.begin()) - 1;
        if (p >= fine_m0_.size())
            return fine_F_.back();
        return fine_F_[p] + partial_panel_z2(fine_t_[p], t);
    }
    auto it = std::upper_bound(tail_t_.begin(), tail_t_.end(), t);
    std::size_t q = static_cast<std::size_t>(it - tail_t_.begin()) - 1;
    if (q >= tail_m0_.size())
        return tail_F_.back();
    return tail_F_[q] + partial_panel_z2(tail_t_[q], t);
}

double SampleGrid::hl_cumulative(double T) {
    if (T < 0.0)
        throw domain_error("hl_cumulative: T must be >= 0");
    if (T > tail_max())
        extend_tail(T * 1.05);
    return cumulative_at(T);
}

IntegralResult SampleGrid::integrate_z2(double a, double b, double tol) {
    if (a < 0.0 || b < a)
        throw domain_error("integrate_z2: need 0 <= a <= b");
    if (a == b)
        return {0.0, 0.0, 0};
    if (b > tail_max())
        extend_tail(b * 1.05);
    std::int64_t e0 = fresh_evals_;
    double fb = cumulative_at(b);
    double fa = cumulative_at(a);
    double val = fb - fa;
    double est = 1e-14 * (std::abs(fa) + std::abs(fb)) + 1e-13 * std::abs(val);
    if (est > tol && tol > 0.0)
        throw tolerance_error("integrate_z2: requested tolerance below the grid floor");
    return {val, est, fresh_evals_ - e0};
}

double SampleGrid::truncation_point(double x, double abs_bound) {
    double t = 5.0 * x;
    for (int i = 0; i < 4; ++i) {
        double arg = 2.06 * (0.5 * x) * (std::log(t) + 3.0) / abs_bound;
        t = 0.5 * x * std::log(std::max(arg, 2.0));
    }
    return t;
}

IntegralResult SampleGrid::integrate_weighted(double x, double a_param, double tol) {
    if (x < 10.0)
        throw domain_error("integrate_weighted: x must be >= 10");
    if (a_param < 7.0 || a_param > 8.0)
        throw domain_error("integrate_weighted: a_param must lie in [7,8]");
    // magnitude model of the value, for the absolute truncation budget
    double scale = 0.5 * x * std::max(1.0, std::log(x / (4.0 * kPi)) + 0.58);
    double mu = a_param * x * std::log(x);
    double cut = std::min(mu, truncation_point(x, 0.1 * tol * scale));
    auto m = weighted_moments(x, cut, false);
    double est = m.tail_bound + 1e-14 * std::abs(m.j0);
    if (tol > 0.0 && est > tol * std::abs(m.j0))
        throw tolerance_error("integrate_weighted: tolerance unreachable");
    return {m.j0, est, m.evaluations};
}

WeightedMoments SampleGrid::weighted_moments(double x, double t_cut, bool with_t_powers) {
    if (x < 10.0)
        throw domain_error("weighted_moments: x must be >= 10");
    if (t_cut > tail_max())
        extend_tail(t_cut * 1.02);

    WeightedMoments out;
    Kahan j0, j1, j2;
    double inv_x = 1.0 / x;
    auto run_tier = [&](const std::vector<double>& bt, const std::vector<double>& m0,
                        const std::vector<double>& m1, const std::vector<double>& m2) {
        std::size_t P = m0.size();
        for (std::size_t p = 0; p < P; ++p) {
            double lo = bt[p];
            if (lo >= t_cut) {
                out.t_cut = lo;
                return false;
            }
            double hi = bt[p + 1];
            double tc = 0.5 * (lo + hi);
            double w = std::exp(-2.0 * tc * inv_x);
            double g0 = m0[p] - 2.0 * inv_x * m1[p] + 2.0 * inv_x * inv_x * m2[p];
            j0.add(w * g0);
            if (with_t_powers) {
                double g1 = m1[p] - 2.0 * inv_x * m2[p];
                j1.add(w * (tc * g0 + g1));
                j2.add(w * (tc * tc * g0 + 2.0 * tc * g1 + m2[p]));
            }
        }
        out.t_cut = bt[P];
        return true;
    };
    bool more = run_tier(fine_t_, fine_m0_, fine_m1_, fine_m2_);
    if (more && !tail_m0_.empty())
        run_tier(tail_t_, tail_m0_, tail_m1_, tail_m2_);
    out.j0 = j0.s;
    out.j1 = j1.s;
    out.j2 = j2.s;
    out.tail_bound =
        std::exp(-2.0 * out.t_cut * inv_x) * (0.5 * x) * (std::log(out.t_cut) + 3.0) * 2.06;
    return out;
}

// ------------------------------------------------------------------ cache io
namespace {
constexpr std::uint64_t kMagic = 0x4a4c4c47524944f1ull;

void put(std::ofstream& f, const void* p, std::size_t n) {
    f.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}
template <class T>
void put_vec(std::ofstream& f, const std::vector<T>& v) {
    std::uint64_t n = v.size();
    put(f, &n, 8);
    put(f, v.data(), n * sizeof(T));
}
template <class T>
bool get_vec(std::ifstream& f, std::vector<T>& v) {
    std::uint64_t n = 0;
    f.read(reinterpret_cast<char*>(&n), 8);
    if (!f)
        return false;
    v.resize(n);
    f.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
    return static_cast<bool>(f);
}
}  // namespace

void SampleGrid::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw io_error("cannot write cache file: " + path);
    put(f, &kMagic, 8);
    put(f, &spec_.fine_max, 8);
    put(f, &spec_.fine_oversample, 8);
    put(f, &spec_.tail_oversample, 8);
    std::int64_t depth = spec_.rs_depth;
    put(f, &depth, 8);
    put_vec(f, fine_t_);
    put_vec(f, fine_z2_);
    put_vec(f, fine_m0_);
    put_vec(f, fine_m1_);
    put_vec(f, fine_m2_);
    put_vec(f, fine_F_);
    put_vec(f, tail_t_);
    put_vec(f, tail_m0_);
    put_vec(f, tail_m1_);
    put_vec(f, tail_m2_);
    put_vec(f, tail_F_);
}

bool SampleGrid::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        return false;
    std::uint64_t magic = 0;
    f.read(reinterpret_cast<char*>(&magic), 8);
    if (magic != kMagic)
        return false;
    GridSpec s;
    std::int64_t depth = 0;
    f.read(reinterpret_cast<char*>(&s.fine_max), 8);
    f.read(reinterpret_cast<char*>(&s.fine_oversample), 8);
    f.read(reinterpret_cast<char*>(&s.tail_oversample), 8);
    f.read(reinterpret_cast<char*>(&depth), 8);
    s.rs_depth = static_cast<int>(depth);
    if (s.fine_max != spec_.fine_max || s.rs_depth != spec_.rs_depth)
        return false;  // different grid spec: rebuild rather than mix
    return get_vec(f, fine_t_) && get_vec(f, fine_z2_) && get_vec(f, fine_m0_) &&
           get_vec(f, fine_m1_) && get_vec(f, fine_m2_) && get_vec(f, fine_F_) &&
           get_vec(f, tail_t_) && get_vec(f, tail_m0_) && get_vec(f, tail_m1_) &&
           get_vec(f, tail_m2_) && get_vec(f, tail_F_);
}

bool SampleGrid::import_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        return false;
    std::string line;
    if (!std::getline(f, line))
        return false;
    double t_max = 0, oversample = 0;
    int depth = 0;
    if (std::sscanf(line.c_str(), "# t_max=%lf oversample=%lf depth=%d", &t_max,
                    &oversample, &depth) != 3)
        return false;
    if (t_max != spec_.fine_max || depth != spec_.rs_depth)
        return false;
    std::getline(f, line);  // column header

    fine_t_ = make_boundaries(0.0, spec_.fine_max, 0.5);
    std::size_t P = fine_t_.size() - 1;
    fine_z2_.assign(P * GridSpec::kFineNodes, 0.0);
    const GaussRule& rule = gauss_rule(GridSpec::kFineNodes);
    for (std::size_t p = 0; p < P; ++p) {
        double c = 0.5 * (fine_t_[p] + fine_t_[p + 1]);
        double h = 0.5 * (fine_t_[p + 1] - fine_t_[p]);
        for (int i = 0; i < GridSpec::kFineNodes; ++i) {
            if (!std::getline(f, line))
                return false;
            double t, z2;
            if (std::sscanf(line.c_str(), "%lf,%lf", &t, &z2) != 2)
                return false;
            if (std::abs(t - (c + h * rule.x[i])) > 1e-9 * std::max(1.0, t))
                return false;  // node layout does not match this grid spec
            fine_z2_[p * GridSpec::kFineNodes + i] = z2;
        }
    }
    // rebuild moments and the cumulative from the imported samples
    fine_m0_.resize(P);
    fine_m1_.resize(P);
    fine_m2_.resize(P);
    fine_F_.resize(P + 1);
    Kahan F;
    fine_F_[0] = 0.0;
    for (std::size_t p = 0; p < P; ++p) {
        double h = 0.5 * (fine_t_[p + 1] - fine_t_[p]);
        double a0 = 0, a1 = 0, a2 = 0;
        for (int i = 0; i < GridSpec::kFineNodes; ++i) {
            double wz = rule.w[i] * fine_z2_[p * GridSpec::kFineNodes + i];
            double d = h * rule.x[i];
            a0 += wz;
            a1 += wz * d;
            a2 += wz * d * d;
        }
        fine_m0_[p] = h * a0;
        fine_m1_[p] = h * a1;
        fine_m2_[p] = h * a2;
        F.add(fine_m0_[p]);
        fine_F_[p + 1] = F.s;
    }
    tail_t_.clear();
    tail_m0_.clear();
    tail_m1_.clear();
    tail_m2_.clear();
    tail_F_.clear();
    return true;
}

void SampleGrid::export_csv(const std::string& path) const {
    std::ofstream f(path, std::ios::trunc);
    if (!f)
        throw io_error("cannot write csv: " + path);
    char line[128];
    std::snprintf(line, sizeof line, "# t_max=%.17g oversample=%.17g depth=%d\n",
                  spec_.fine_max, spec_.fine_oversample, spec_.rs_depth);
    f << line << "t,z2\n";
    const GaussRule& rule = gauss_rule(GridSpec::kFineNodes);
    for (std::size_t p = 0; p < fine_m0_.size(); ++p) {
        double c = 0.5 * (fine_t_[p] + fine_t_[p + 1]);
        double h = 0.5 * (fine_t_[p + 1] - fine_t_[p]);
        for (int i = 0; i < GridSpec::kFineNodes; ++i) {
            std::snprintf(line, sizeof line, "%.17g,%.17g\n", c + h * rule.x[i],
                          fine_z2_[p * GridSpec::kFineNodes + i]);
            f << line;
        }
    }
}

}  // namespace jll
