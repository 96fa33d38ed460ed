// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo estimate of I(x; y1, y2) in bits for Gaussian input:
//
//   I ~ (1/N) sum_i [log2 f(y1_i, y2_i | x_i) - log2 f(y1_i, y2_i)]
//
// over draws from the channel model. The outer samples are split into
// independently seeded batches; the standard error comes from the spread of
// the batch means. Results are bit-identical for any OpenMP thread count.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "splitrx/channel_model.hpp"

namespace splitrx {

enum class DensityMethod {
    /// Closed-form y1 integral plus a 1-D radial quadrature for both densities.
    collapsed,
    /// Gauss-Hermite over w for the conditional, prior mixture for the marginal.
    quadrature_mixture,
};

const char* to_string(DensityMethod m);

struct EstimatorConfig {
    std::size_t n_outer = 200000;
    std::size_t l_mixture = 4096;
    int quad_order = 32;
    std::size_t n_batches = 20;
    std::uint64_t seed = 42;
    DensityMethod method = DensityMethod::collapsed;

    static constexpr std::size_t kMinBatches = 8;

    /// Throws std::invalid_argument on a violated invariant.
    void validate() const;
    std::string fingerprint() const;
};

struct MiEstimate {
    double bits = 0.0;
    double std_error = 0.0;
    std::string config;
};

/// OpenMP-parallel estimate. At rho = 0 only y2 is used and at rho = 1 only
/// y1, since the other coordinate is then pure noise independent of x.
MiEstimate estimate_mi(const ChannelParams& params, SplittingRatio rho, const EstimatorConfig& cfg);

/// Single-threaded reference for estimate_mi; identical output.
MiEstimate estimate_mi_serial(const ChannelParams& params, SplittingRatio rho,
                              const EstimatorConfig& cfg);

/// Estimate from a caller-supplied batch, split into cfg.n_batches equal
/// consecutive blocks. Coherent outputs are derotated by batch.phase first.
/// The mixture method draws one mixture per block from cfg.seed.
MiEstimate estimate_mi_on_batch(const ChannelParams& params, SplittingRatio rho,
                                const SampleBatch& batch, const EstimatorConfig& cfg);

struct SweepPoint {
    double rho;
    MiEstimate estimate;
};

/// Seed used for the grid point rho of a sweep with master seed `master`.
/// Depends only on (master, rho), not on the rest of the grid.
std::uint64_t point_seed(std::uint64_t master, double rho);

/// estimate_mi at every grid value (strictly increasing, within [0, 1]),
/// each with its point_seed.
std::vector<SweepPoint> sweep_rho(const ChannelParams& params, std::span<const double> grid,
                                  const EstimatorConfig& cfg);

}  // namespace splitrx
