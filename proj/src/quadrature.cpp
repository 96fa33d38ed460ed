// SPDX-License-Identifier: Apache-2.0
#include "splitrx/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace splitrx {

namespace {

constexpr double kNewtonTol = 1e-15;
constexpr int kMaxNewton = 100;

}  // namespace

// Newton iteration on the orthonormal Hermite recurrence, with the classical
// asymptotic starting guesses for the largest roots.
QuadratureRule::QuadratureRule(int order) {
    if (order < kMinOrder) throw std::invalid_argument("Gauss-Hermite order must be at least 8");
    const int n = order;
    nodes_.assign(n, 0.0);
    weights_.assign(n, 0.0);
    const double pim4 = std::pow(M_PI, -0.25);
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * nodes_[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * nodes_[1];
        else
            z = 2.0 * z - nodes_[i - 2];

        double pp = 0.0;
        int it = 0;
        for (; it < kMaxNewton; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kNewtonTol * std::max(1.0, std::abs(z))) break;
        }
        if (it == kMaxNewton) throw std::runtime_error("Gauss-Hermite root iteration did not converge");
        nodes_[i] = z;
        nodes_[n - 1 - i] = -z;
        weights_[i] = 2.0 / (pp * pp);
        weights_[n - 1 - i] = weights_[i];
    }
    // Store in ascending order.
    for (int i = 0; i < n / 2; ++i) {
        std::swap(nodes_[i], nodes_[n - 1 - i]);
        std::swap(weights_[i], weights_[n - 1 - i]);
    }
    log_weights_.resize(n);
    for (int i = 0; i < n; ++i) log_weights_[i] = std::log(weights_[i]);
}

LegendreRule::LegendreRule(int order) {
    if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
    const int n = order;
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kNewtonTol) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

}  // namespace splitrx
