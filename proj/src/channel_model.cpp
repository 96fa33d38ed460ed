// SPDX-License-Identifier: Apache-2.0
#include "splitrx/channel_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace splitrx {

namespace {

void require_variance(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

// Standard normal from two uniforms; avoids the state cached by
// std::normal_distribution so that every draw consumes exactly two words.
struct GaussianSource {
    Rng& rng;

    double uniform() { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

    // Returns one standard normal pair (Box-Muller).
    std::pair<double, double> pair() {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * M_PI * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }

    cplx complex(double variance) {
        auto [a, b] = pair();
        const double s = std::sqrt(0.5 * variance);
        return {s * a, s * b};
    }

    double real(double variance) { return std::sqrt(variance) * pair().first; }
};

struct RawDraw {
    cplx x, w, z;
    double n;
};

RawDraw draw_raw(const NoiseProfile& noise, GaussianSource& g) {
    RawDraw d;
    d.x = g.complex(1.0);
    d.w = g.complex(noise.sigma_a2);
    d.z = g.complex(noise.sigma_cov2);
    d.n = g.real(noise.sigma_rec2);
    return d;
}

template <typename Fill>
SampleBatch fill_batch(std::size_t n, std::uint64_t seed, Fill&& fill) {
    if (n == 0) throw std::invalid_argument("sample count must be at least 1");
    SampleBatch b;
    b.seed = seed;
    b.n = n;
    b.x.resize(n);
    b.y1.resize(n);
    b.y2.resize(n);
    const auto chunks = static_cast<std::int64_t>((n + kSampleChunk - 1) / kSampleChunk);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(c));
        GaussianSource g{rng};
        const std::size_t begin = static_cast<std::size_t>(c) * kSampleChunk;
        const std::size_t end = std::min(n, begin + kSampleChunk);
        for (std::size_t i = begin; i < end; ++i) fill(g, b, i);
    }
    return b;
}

}  // namespace

void NoiseProfile::validate() const {
    require_variance(sigma_a2, "sigma_a2");
    require_variance(sigma_cov2, "sigma_cov2");
    require_variance(sigma_rec2, "sigma_rec2");
}

void ChannelParams::validate() const {
    if (!(power > 0.0) || !std::isfinite(power))
        throw std::invalid_argument("power must be positive and finite");
    if (!(h_mag > 0.0) || !std::isfinite(h_mag))
        throw std::invalid_argument("h_mag must be positive and finite");
    noise.validate();
}

SplittingRatio::SplittingRatio(double rho) : rho_(rho) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("splitting ratio must lie in [0, 1]");
}

double SplittingRatio::coherent_amplitude() const { return std::sqrt(rho_); }
double SplittingRatio::envelope_amplitude() const { return std::sqrt(1.0 - rho_); }

cplx SampleBatch::derotated_y1(std::size_t i) const {
    if (phase == 0.0) return y1[i];
    return y1[i] * std::polar(1.0, -phase);
}

ChannelPolar normalize_channel(cplx h) {
    const double mag = std::abs(h);
    if (!(mag > 0.0) || !std::isfinite(mag))
        throw std::invalid_argument("channel coefficient must be nonzero and finite");
    return {mag, std::arg(h)};
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng make_stream(std::uint64_t master, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

Symbol sample_symbol(const ChannelParams& params, SplittingRatio rho, Rng& rng) {
    GaussianSource g{rng};
    const RawDraw d = draw_raw(params.noise, g);
    const cplx u = std::sqrt(params.power) * params.h_mag * d.x + d.w;
    return {d.x, rho.coherent_amplitude() * u + d.z, rho.envelope_amplitude() * std::abs(u) + d.n};
}

SampleBatch sample_batch(const ChannelParams& params, SplittingRatio rho, std::size_t n,
                         std::uint64_t seed) {
    params.validate();
    return fill_batch(n, seed, [&](GaussianSource& g, SampleBatch& b, std::size_t i) {
        const Symbol s = sample_symbol(params, rho, g.rng);
        b.x[i] = s.x;
        b.y1[i] = s.y1;
        b.y2[i] = s.y2;
    });
}

SampleBatch sample_batch(double power, cplx h, const NoiseProfile& noise, SplittingRatio rho,
                         std::size_t n, std::uint64_t seed) {
    const ChannelPolar polar = normalize_channel(h);
    ChannelParams{power, polar.h_mag, noise}.validate();
    const double amp = std::sqrt(power);
    SampleBatch out = fill_batch(n, seed, [&](GaussianSource& g, SampleBatch& b, std::size_t i) {
        const RawDraw d = draw_raw(noise, g);
        const cplx u = amp * h * d.x + d.w;
        b.x[i] = d.x;
        b.y1[i] = rho.coherent_amplitude() * u + d.z;
        b.y2[i] = rho.envelope_amplitude() * std::abs(u) + d.n;
    });
    out.phase = polar.phase;
    return out;
}

}  // namespace splitrx
