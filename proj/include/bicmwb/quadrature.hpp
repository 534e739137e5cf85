#pragma once

#include <vector>

namespace bicmwb {

/// Nodes and probability weights (weights sum to 1) of a Gaussian quadrature
/// rule read as an expectation: E[f(X)] ~= sum_i w_i f(x_i).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rule for X ~ N(0, 1/2), the per-dimension law of unit-variance circularly
/// symmetric complex Gaussian noise. Built from the Hermite Jacobi matrix by
/// Golub-Welsch.
QuadratureRule gauss_hermite_half(int n);

/// Rule for chi ~ Gamma(shape, 1/shape) (unit mean), the squared Nakagami-nu
/// fading magnitude with shape = nu. Generalized Gauss-Laguerre with
/// alpha = shape - 1, nodes rescaled by 1/shape.
QuadratureRule gauss_laguerre_gamma(int n, double shape);

} // namespace bicmwb
