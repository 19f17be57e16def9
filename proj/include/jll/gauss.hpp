#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jll {

// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
    int n() const { return static_cast<int>(x.size()); }
};

const GaussRule& gauss_rule(int n);

class PanelBasis;
const PanelBasis& panel_basis(int n);

// Spectral helper for one panel: converts Gauss-Legendre node values of a
// smooth function into a Legendre series, so the function and the running
// integral of its interpolant can be evaluated anywhere inside the panel.
// Exact for polynomials of degree < n; the running-integral rows reproduce
// the quadrature weights at u = 1.
class PanelBasis {
  public:
    explicit PanelBasis(int n);

    int n() const { return n_; }

    // Legendre coefficients of the degree n-1 interpolant through the node
    // values. coeff must have room for n entries.
    void coeffs(std::span<const double> node_values, std::span<double> coeff) const;

    // interpolant value at u in [-1, 1]
    static double eval(std::span<const double> coeff, double u);

    // integral of the interpolant over [-1, u]
    static double integral(std::span<const double> coeff, double u);

    // running integral of the interpolant at every node, i.e.
    // out[i] = int_{-1}^{x_i} interpolant
    void node_integrals(std::span<const double> coeff, std::span<double> out) const;

    const GaussRule& rule() const { return rule_; }

  private:
    int n_;
    const GaussRule& rule_;
    std::vector<double> proj_;  // n x n: proj_[k*n+i] = (2k+1)/2 * w_i * P_k(x_i)
};

}  // namespace jll
