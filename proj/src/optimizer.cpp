// SPDX-License-Identifier: Apache-2.0
#include "splitrx/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "splitrx/errors.hpp"

namespace splitrx {

namespace {

constexpr double kInvPhi = 0.61803398874989484820;  // (sqrt(5) - 1) / 2

std::vector<double> make_grid(double lo, double hi, double step) {
    std::vector<double> g;
    const auto cells = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-9));
    for (std::size_t i = 0; i < cells; ++i) g.push_back(lo + static_cast<double>(i) * step);
    g.push_back(hi);
    return g;
}

struct Candidate {
    double x;
    double f;
};

// Golden-section search for a maximum of a unimodal f on [a, b].
Candidate golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? Candidate{c, fc} : Candidate{d, fd};
}

}  // namespace

ScanResult maximize_over_rho(const std::function<double(double)>& objective, double lo, double hi,
                             double grid_step, double refine_tol) {
    if (!(lo >= 0.0 && hi <= 1.0 && lo < hi))
        throw std::invalid_argument("search interval must satisfy 0 <= lo < hi <= 1");
    if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be positive");
    if (!(refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be positive");

    const std::vector<double> grid = make_grid(lo, hi, grid_step);
    std::vector<double> values(grid.size());
    std::size_t best = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = objective(grid[i]);
        if (!std::isfinite(values[i])) {
            if (i == 0) continue;
            throw NumericalError("objective is not finite inside the search interval");
        }
        if (best == grid.size() || values[i] > values[best]) best = i;
    }
    if (best == grid.size()) throw NumericalError("objective is not finite on the grid");

    ScanResult out{grid[best], values[best], grid_step, false};
    const std::size_t left = best > 0 ? best - 1 : 0;
    const std::size_t right = best + 1 < grid.size() ? best + 1 : best;
    double a = grid[left];
    const double b = grid[right];
    if (left == 0 && !std::isfinite(values[0])) a += 1e-3 * (grid[1] - grid[0]);
    if (b - a <= refine_tol) return out;

    const Candidate g = golden_max(objective, a, b, refine_tol);
    out.refined = true;
    // The bracket endpoints are already-evaluated candidates; keep whichever
    // of the three is largest, earlier (smaller rho) on ties.
    if (g.f > out.value) out = {g.x, g.f, grid_step, true};
    return out;
}

ScanResult argmax_mc(const ChannelParams& params, const EstimatorConfig& cfg,
                     std::span<const double> grid, std::vector<SweepPoint>& evaluated) {
    if (grid.empty()) throw std::invalid_argument("rho grid must not be empty");
    evaluated.clear();
    ScanResult out;
    double min_step = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
            throw std::invalid_argument("rho grid values must lie in [0, 1]");
        if (i > 0) {
            const double step = grid[i] - grid[i - 1];
            if (!(step > 0.0)) throw std::invalid_argument("rho grid must be strictly increasing");
            min_step = i == 1 ? step : std::min(min_step, step);
        }
        const MiEstimate e = estimate_mi(params, SplittingRatio(grid[i]), cfg);
        evaluated.push_back({grid[i], e});
        if (i == 0 || e.bits > out.value) out = {grid[i], e.bits, 0.0, false};
    }
    out.grid_step = min_step;
    return out;
}

ScanResult argmax_mc(const ChannelParams& params, const EstimatorConfig& cfg,
                     std::span<const double> grid) {
    std::vector<SweepPoint> evaluated;
    return argmax_mc(params, cfg, grid, evaluated);
}

}  // namespace splitrx
