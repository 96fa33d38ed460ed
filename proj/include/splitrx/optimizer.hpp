// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>

#include "splitrx/channel_model.hpp"
#include "splitrx/mi_estimator.hpp"

namespace splitrx {

struct ScanResult {
    double rho_star = 0.0;
    double value = 0.0;
    double grid_step = 0.0;
    bool refined = false;
};

/// Grid scan over [lo, hi] followed by golden-section refinement inside the
/// cells adjacent to the best grid point. Ties go to the smallest rho. The
/// objective may be non-finite at `lo` only (e.g. a formula undefined at
/// rho = 0); anywhere else that is a NumericalError.
ScanResult maximize_over_rho(const std::function<double(double)>& objective, double lo, double hi,
                             double grid_step, double refine_tol);

/// Grid argmax of the Monte-Carlo MI. Every grid point reuses cfg.seed, so
/// comparisons between points share their random numbers. No refinement.
ScanResult argmax_mc(const ChannelParams& params, const EstimatorConfig& cfg,
                     std::span<const double> grid);

/// Same, also returning every evaluated point.
ScanResult argmax_mc(const ChannelParams& params, const EstimatorConfig& cfg,
                     std::span<const double> grid, std::vector<SweepPoint>& evaluated);

}  // namespace splitrx
