// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace splitrx {

/// Gauss-Hermite rule for weight exp(-t^2) on the real line. Weights sum to
/// sqrt(pi). Immutable after construction.
class QuadratureRule {
public:
    static constexpr int kMinOrder = 8;

    explicit QuadratureRule(int order);

    int order() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& log_weights() const { return log_weights_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> log_weights_;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct LegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit LegendreRule(int order);
};

}  // namespace splitrx
