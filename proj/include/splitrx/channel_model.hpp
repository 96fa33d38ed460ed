// SPDX-License-Identifier: Apache-2.0
//
// Signal model of the ED-CD splitting receiver.
//
// After removing the channel phase, the two baseband outputs are
//
//   y1 = sqrt(rho) * (sqrt(P)|h| x + w) + z          (coherent branch)
//   y2 = sqrt(1 - rho) * |sqrt(P)|h| x + w| + n      (envelope branch)
//
// with x ~ CN(0, 1), w ~ CN(0, sigma_a2), z ~ CN(0, sigma_cov2) and
// n ~ N(0, sigma_rec2). A complex Gaussian of variance v has independent
// real and imaginary parts of variance v / 2.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace splitrx {

using cplx = std::complex<double>;

/// Noise variances of one receiver scenario, linear power units.
struct NoiseProfile {
    double sigma_a2 = 1.0;   ///< antenna noise (before the splitter)
    double sigma_cov2 = 1.0; ///< coherent-branch conversion noise
    double sigma_rec2 = 1.0; ///< envelope-branch rectifier noise

    /// Throws std::invalid_argument unless every variance is positive and finite.
    void validate() const;
};

struct ChannelParams {
    double power = 1.0;
    double h_mag = 1.0;
    NoiseProfile noise;

    /// Received signal power P |h|^2.
    double signal_gain() const { return power * h_mag * h_mag; }
    void validate() const;
};

/// Fraction of the received power routed to the coherent branch.
class SplittingRatio {
public:
    explicit SplittingRatio(double rho);
    double value() const { return rho_; }
    double coherent_amplitude() const;  // sqrt(rho)
    double envelope_amplitude() const;  // sqrt(1 - rho)

private:
    double rho_;
};

struct ChannelPolar {
    double h_mag;
    double phase;  // radians, in (-pi, pi]
};

/// Splits a complex channel coefficient into magnitude and phase. Only the
/// magnitude enters any downstream computation.
ChannelPolar normalize_channel(cplx h);

struct Symbol {
    cplx x;
    cplx y1;
    double y2;
};

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

/// Engine for stream `stream` of master seed `master`.
Rng make_stream(std::uint64_t master, std::uint64_t stream);

/// Draws one channel use of the phase-free model.
Symbol sample_symbol(const ChannelParams& params, SplittingRatio rho, Rng& rng);

/// Paired draws (x, y1, y2). When generated from a complex channel the
/// coherent outputs are in the original (rotated) frame and `phase` records
/// the channel phase; `derotated_y1` maps them back.
struct SampleBatch {
    std::vector<cplx> x;
    std::vector<cplx> y1;
    std::vector<double> y2;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double phase = 0.0;

    cplx derotated_y1(std::size_t i) const;
};

/// Samples per independently seeded chunk of a batch. Chunk k of a batch is
/// reproducible on its own, so generation can be split across threads.
inline constexpr std::size_t kSampleChunk = 1U << 13;

/// n i.i.d. draws from the phase-free model; deterministic in `seed`.
SampleBatch sample_batch(const ChannelParams& params, SplittingRatio rho, std::size_t n,
                         std::uint64_t seed);

/// n i.i.d. draws from the model with a complex channel coefficient h, before
/// phase removal:
///   y1 = sqrt(rho) (sqrt(P) h x + w') + z',  y2 = sqrt(1-rho) |sqrt(P) h x + w'| + n.
SampleBatch sample_batch(double power, cplx h, const NoiseProfile& noise, SplittingRatio rho,
                         std::size_t n, std::uint64_t seed);

}  // namespace splitrx
