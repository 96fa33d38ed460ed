// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace splitrx {

inline constexpr double kLn2 = 0.69314718055994530942;

/// log(I0(z) * exp(-z)) for z >= 0, accurate to a few ulp of the result.
double log_bessel_i0e(double z);

/// Streaming log-sum-exp; terms below the running maximum never overflow
/// or underflow the accumulator.
class LogSumExp {
public:
    void add(double log_term) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (log_term <= max_) {
            sum_ += std::exp(log_term - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
            max_ = log_term;
        }
    }

    /// -inf when no finite term was added.
    double value() const {
        if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
        return max_ + std::log(sum_);
    }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

double log_sum_exp(std::span<const double> terms);

}  // namespace splitrx
