// SPDX-License-Identifier: Apache-2.0
#include "splitrx/special.hpp"

#include <stdexcept>

namespace splitrx {

namespace {

// Above this argument the asymptotic expansion reaches full double precision
// before its terms start to grow.
constexpr double kAsymptoticFrom = 25.0;

}  // namespace

double log_bessel_i0e(double z) {
    if (z < 0.0 || std::isnan(z)) throw std::domain_error("log_bessel_i0e needs z >= 0");
    if (z < kAsymptoticFrom) {
        // I0(z) = sum_k (z^2/4)^k / (k!)^2
        const double q = 0.25 * z * z;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return std::log(sum) - z;
    }
    if (std::isinf(z)) return -std::numeric_limits<double>::infinity();
    // I0(z) e^{-z} ~ (2 pi z)^{-1/2} sum_k [(2k-1)!!]^2 / (k! 8^k z^k)
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * z);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return std::log(sum) - 0.5 * std::log(2.0 * M_PI * z);
}

double log_sum_exp(std::span<const double> terms) {
    LogSumExp acc;
    for (double t : terms) acc.add(t);
    return acc.value();
}

}  // namespace splitrx
