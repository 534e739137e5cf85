#include "bicmwb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace bicmwb {

namespace {

// Eigenvalues of a symmetric tridiagonal matrix together with the first
// component of each normalized eigenvector (QL with implicit shifts). For a
// Jacobi matrix built from the orthogonal-polynomial recurrence this is all
// Golub-Welsch needs: node_i = eigenvalue_i, weight_i = mu0 * first_comp_i^2.
//
// d: diagonal (in: matrix, out: eigenvalues); e: subdiagonal in e[1..n-1];
// z: out, first components.
void tridiag_eigen_first_components(std::vector<double>& d, std::vector<double>& e,
                                    std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    z.assign(n, 0.0);
    z[0] = 1.0;
    if (n == 1) return;

    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw std::runtime_error("quadrature: tridiagonal QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    // Sort nodes ascending, carrying the first components along.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> ds(n), zs(n);
    for (int i = 0; i < n; ++i) {
        ds[i] = d[order[i]];
        zs[i] = z[order[i]];
    }
    d = std::move(ds);
    z = std::move(zs);
}

} // namespace

QuadratureRule gauss_hermite_half(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite_half: order must be >= 1");
    std::vector<double> d(n, 0.0), e(n, 0.0), z;
    // Monic Hermite recurrence for weight exp(-x^2): b_k^2 = k/2.
    for (int k = 1; k < n; ++k) e[k] = std::sqrt(0.5 * k);
    tridiag_eigen_first_components(d, e, z);

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = d[i];
        rule.weights[i] = z[i] * z[i]; // normalized: mu0 cancels
    }
    // The rule is symmetric; average out asymmetric rounding.
    for (int i = 0, j = n - 1; i < j; ++i, --j) {
        const double t = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        rule.nodes[i] = -t;
        rule.nodes[j] = t;
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.weights[i] = rule.weights[j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_laguerre_gamma(int n, double shape) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre_gamma: order must be >= 1");
    if (!(shape > 0.0)) throw std::invalid_argument("gauss_laguerre_gamma: shape must be > 0");
    const double alpha = shape - 1.0;
    std::vector<double> d(n), e(n, 0.0), z;
    // Monic generalized Laguerre recurrence for weight x^alpha exp(-x):
    // a_k = 2k + alpha + 1, b_k^2 = k (k + alpha).
    for (int k = 0; k < n; ++k) d[k] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) e[k] = std::sqrt(k * (k + alpha));
    tridiag_eigen_first_components(d, e, z);

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = d[i] / shape; // Gamma(shape, 1/shape) has unit mean
        rule.weights[i] = z[i] * z[i];
    }
    return rule;
}

} // namespace bicmwb
