// quadrature.hpp
// Gauss-Legendre nodes on [-1, 1] and a product rule for averages over the
// Bloch sphere.

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "tritangle/qcore.hpp"

namespace tritangle {

struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;  // sum to 2
};

// Newton iteration on P_n from the Chebyshev-like initial guesses.
inline GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
    GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

struct QuadratureConfig {
    int theta_nodes = 32;  // Gauss-Legendre in cos(theta)
    int phi_nodes = 16;    // uniform in phi
};

inline constexpr int kMinQuadratureNodes = 8;

// (1/4pi) * integral over the sphere of f(theta, phi) sin(theta) dtheta dphi.
template <class F>
double sphere_average(F&& f, const QuadratureConfig& cfg = {}) {
    if (cfg.theta_nodes < kMinQuadratureNodes || cfg.phi_nodes < kMinQuadratureNodes)
        throw InvalidArgument("sphere_average: need at least 8 nodes in each direction");
    const GaussLegendreRule gl = gauss_legendre(cfg.theta_nodes);
    const double dphi = 2.0 * std::numbers::pi / cfg.phi_nodes;
    double total = 0.0;
    for (int i = 0; i < cfg.theta_nodes; ++i) {
        const double theta = std::acos(gl.nodes[i]);
        double ring = 0.0;
        for (int k = 0; k < cfg.phi_nodes; ++k) ring += f(theta, k * dphi);
        total += gl.weights[i] * ring * dphi;
    }
    return total / (4.0 * std::numbers::pi);
}

}  // namespace tritangle
