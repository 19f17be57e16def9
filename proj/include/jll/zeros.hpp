#pragma once

#include <cstdint>
#include <vector>

namespace jll {

struct ZeroPair {
    double gamma;
    double gamma_prime;
    double refinement_width;
};

struct SValue {
    double t;
    double s;
};

struct ZeroScanOptions {
    double oversample = 8.0;      // scan-grid points per mean zero gap
    double refine_width = 1e-9;   // bisection target width
};

// sign-change zeros of Z on [lo, hi], ascending; blind to even-order zeros
std::vector<double> find_zero_ordinates(double lo, double hi,
                                        const ZeroScanOptions& opt = {});

// consecutive pairs (gamma_k, gamma_{k+1}) for every zero gamma_k in [lo, hi];
// the successor of the last in-range zero is located beyond hi
std::vector<ZeroPair> find_zeros(double lo, double hi, const ZeroScanOptions& opt = {});

// Cached enumeration of all zeros from the bottom of the critical line up,
// for the counting function N(t) and S(t). Extension batches are checked
// against the main term of N(t); a mismatch beyond |S| = 4 triggers one
// rescan at doubled resolution and then errors out.
class ZeroTable {
  public:
    void ensure(double t);
    std::int64_t count_below(double t);  // N(t)
    SValue s_of_t(double t);             // S(t) = N(t) - 1 - theta(t)/pi
    const std::vector<double>& zeros() const { return zeros_; }

  private:
    std::vector<double> zeros_;
    double built_to_ = 10.0;
};

}  // namespace jll
