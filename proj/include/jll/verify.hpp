#pragma once

#include <string>
#include <vector>

#include "jll/lab.hpp"

namespace jll {

struct VerificationReport {
    std::string name;
    double T = 0.0;
    double U = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double band_lo = 0.0;
    double band_hi = 0.0;
    bool pass = false;
    bool assertable = true;  // false: report-only, excluded from exit codes
    std::string notes;
    double elapsed_ms = 0.0;
};

std::string report_json(const VerificationReport& r);  // schema 1
std::string report_csv_header();
std::string report_csv(const VerificationReport& r);

// chord mean-value law (2.5): int_T^{T+U} Z^2 vs U ln T tan(alpha)
VerificationReport verify_theorem1(Lab& lab, double T, double U);

// Balasubramanian window comparator over U0 = T^(1/3+2eps), plus the
// fundamental-chord slope
VerificationReport verify_fundamental(Lab& lab, double T);

// mean of Z^2 over [N,M] in [T, T+U0] vs ln T, with the chord classification
VerificationReport verify_mean_value(Lab& lab, double N, double M, double T);

struct Theorem2Detail {
    VerificationReport report;
    double segment_ratio = 0.0;    // distance of receding segments vs (1-c)pi(T)
    double ingham_ratio = 0.0;     // image-side Z^4 integral vs leading term
    double transport_ratio = 0.0;  // lhs vs ln T * image integral
};
Theorem2Detail verify_theorem2_detail(Lab& lab, double T);
VerificationReport verify_theorem2(Lab& lab, double T);

// existential mean-value point (8.6)/(8.7); report-only
VerificationReport point_prediction(Lab& lab, double T);

enum class SubstFn { one, linear, chebyshev, prime_pi, selberg_pow };

// Lemma 4 substitution laws (9.6)/(9.7). image_form selects the (9.7) domain
// [phi1^-1(T), phi1^-1(T+U)]. transport_exact switches to the Z~^2 weight of
// the exact change-of-variables identity (9.3), banded at 1e-5.
VerificationReport verify_substitution(Lab& lab, SubstFn f, int param, double T,
                                       double U, bool image_form = false,
                                       bool transport_exact = false);

// Chebyshev-weight integral equation (11.7) on [phi1^-1(T), phi1^-1(T+2)]
VerificationReport verify_chebyshev(Lab& lab, int n, double T);

// Selberg-moment transport (11.3); report-only
VerificationReport verify_selberg_moment(Lab& lab, int k, double T);

// gap law (7.4) across a list of T values, with the cross-decade trend
VerificationReport verify_gap_law(Lab& lab, const std::vector<double>& t_list);

}  // namespace jll
