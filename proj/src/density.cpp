// SPDX-License-Identifier: Apache-2.0
#include "splitrx/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "splitrx/errors.hpp"
#include "splitrx/special.hpp"

namespace splitrx {

namespace {

// Half-width of the radial integration window, in standard deviations.
constexpr double kWindowSigmas = 10.0;

double log_cn(cplx y, cplx mean, double var) {
    return -std::log(M_PI * var) - std::norm(y - mean) / var;
}

double log_normal(double y, double mean, double var) {
    const double d = y - mean;
    return -0.5 * std::log(2.0 * M_PI * var) - 0.5 * d * d / var;
}

cplx received(const ChannelParams& params, cplx x, cplx w) {
    return std::sqrt(params.power) * params.h_mag * x + w;
}

}  // namespace

double log_pdf_y1_given_xw(cplx y1, cplx x, cplx w, const ChannelParams& params,
                           SplittingRatio rho) {
    return log_cn(y1, rho.coherent_amplitude() * received(params, x, w), params.noise.sigma_cov2);
}

double log_pdf_y2_given_xw(double y2, cplx x, cplx w, const ChannelParams& params,
                           SplittingRatio rho) {
    return log_normal(y2, rho.envelope_amplitude() * std::abs(received(params, x, w)),
                      params.noise.sigma_rec2);
}

double log_pdf_pair_given_x(cplx y1, double y2, cplx x, const ChannelParams& params,
                            SplittingRatio rho, const QuadratureRule& rule) {
    const double sigma_a = std::sqrt(params.noise.sigma_a2);
    const auto& t = rule.nodes();
    const auto& lw = rule.log_weights();
    LogSumExp acc;
    for (int i = 0; i < rule.order(); ++i) {
        for (int j = 0; j < rule.order(); ++j) {
            const cplx w{sigma_a * t[i], sigma_a * t[j]};
            acc.add(lw[i] + lw[j] + log_pdf_y1_given_xw(y1, x, w, params, rho) +
                    log_pdf_y2_given_xw(y2, x, w, params, rho));
        }
    }
    const double out = acc.value() - std::log(M_PI);
    if (!std::isfinite(out))
        throw NumericalError("conditional density quadrature is not finite; "
                             "quadrature order too low for these parameters");
    return out;
}

std::vector<MixturePoint> draw_mixture(const ChannelParams& params, std::size_t size,
                                       std::uint64_t seed) {
    if (size == 0) throw std::invalid_argument("mixture size must be at least 1");
    params.validate();
    Rng rng = make_stream(seed, 0);
    std::normal_distribution<double> normal;
    const double sx = std::sqrt(0.5);
    const double sw = std::sqrt(0.5 * params.noise.sigma_a2);
    std::vector<MixturePoint> out(size);
    for (auto& p : out) {
        const double xr = normal(rng);
        const double xi = normal(rng);
        const double wr = normal(rng);
        const double wi = normal(rng);
        p.x = {sx * xr, sx * xi};
        p.w = {sw * wr, sw * wi};
    }
    return out;
}

double log_pdf_pair_marginal(cplx y1, double y2, const ChannelParams& params, SplittingRatio rho,
                             std::span<const MixturePoint> mixture) {
    if (mixture.empty()) throw std::invalid_argument("mixture must not be empty");
    LogSumExp acc;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : mixture) {
        const double term = log_pdf_y1_given_xw(y1, p.x, p.w, params, rho) +
                            log_pdf_y2_given_xw(y2, p.x, p.w, params, rho);
        best = std::max(best, term);
        acc.add(term);
    }
    if (!(best > kLogUnderflow))
        throw NumericalError("every mixture term underflows; evaluation point is outside the "
                             "support resolved by this mixture size");
    return acc.value() - std::log(static_cast<double>(mixture.size()));
}

EnvelopeQuadrature::EnvelopeQuadrature(int panels) : panels_(panels), rule_(kNodesPerPanel) {
    if (panels < 1) throw std::invalid_argument("envelope quadrature needs at least one panel");
    for (double w : rule_.weights) log_weights_.push_back(std::log(w));
}

double log_envelope_kernel(double y2, double a, double v, double scale, double sigma2,
                           const EnvelopeQuadrature& quad) {
    const double sd_rice = std::sqrt(0.5 * v);
    const double sd_gauss = std::sqrt(sigma2) / scale;
    const double centre_gauss = y2 / scale;

    double lo = std::max({0.0, a - kWindowSigmas * sd_rice, centre_gauss - kWindowSigmas * sd_gauss});
    double hi = std::min(a + kWindowSigmas * sd_rice, centre_gauss + kWindowSigmas * sd_gauss);
    if (!(lo < hi)) {
        // Disjoint supports: integrate around the peak of the product of the
        // two Gaussian approximations instead.
        const double p_rice = 1.0 / (sd_rice * sd_rice);
        const double p_gauss = 1.0 / (sd_gauss * sd_gauss);
        const double sd = 1.0 / std::sqrt(p_rice + p_gauss);
        const double centre = (a * p_rice + centre_gauss * p_gauss) * sd * sd;
        lo = std::max(0.0, centre - 2.0 * kWindowSigmas * sd);
        hi = std::max(centre + 2.0 * kWindowSigmas * sd, lo + sd);
    }

    const auto& rule = quad.panel_rule();
    const double width = (hi - lo) / quad.panels();
    const double log_half_width = std::log(0.5 * width);
    const double log_norm = -0.5 * std::log(2.0 * M_PI * sigma2);
    const double log_2_over_v = std::log(2.0 / v);
    LogSumExp acc;
    for (int p = 0; p < quad.panels(); ++p) {
        const double mid = lo + (p + 0.5) * width;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double r = mid + 0.5 * width * rule.nodes[k];
            const double dr = r - a;
            const double log_rice =
                log_2_over_v + std::log(r) - dr * dr / v + log_bessel_i0e(2.0 * r * a / v);
            const double dg = y2 - scale * r;
            const double log_gauss = log_norm - 0.5 * dg * dg / sigma2;
            acc.add(quad.log_weights()[k] + log_half_width + log_rice + log_gauss);
        }
    }
    const double out = acc.value();
    if (!std::isfinite(out)) throw NumericalError("envelope integral is not finite");
    return out;
}

double log_pdf_pair_given_prior(cplx y1, double y2, cplx mean, double var,
                                const ChannelParams& params, SplittingRatio rho,
                                const EnvelopeQuadrature& quad) {
    const NoiseProfile& nz = params.noise;
    const double r = rho.value();
    const double g = rho.coherent_amplitude();
    const double l1 = log_cn(y1, g * mean, r * var + nz.sigma_cov2);
    if (r == 1.0) return l1 + log_normal(y2, 0.0, nz.sigma_rec2);
    // Posterior of u given y1.
    const double post_var = 1.0 / (1.0 / var + r / nz.sigma_cov2);
    const cplx post_mean = post_var * (mean / var + g * y1 / nz.sigma_cov2);
    return l1 + log_envelope_kernel(y2, std::abs(post_mean), post_var, rho.envelope_amplitude(),
                                    nz.sigma_rec2, quad);
}

double log_pdf_pair_given_x_collapsed(cplx y1, double y2, cplx x, const ChannelParams& params,
                                      SplittingRatio rho, const EnvelopeQuadrature& quad) {
    return log_pdf_pair_given_prior(y1, y2, std::sqrt(params.power) * params.h_mag * x,
                                    params.noise.sigma_a2, params, rho, quad);
}

double log_pdf_pair_collapsed(cplx y1, double y2, const ChannelParams& params, SplittingRatio rho,
                              const EnvelopeQuadrature& quad) {
    return log_pdf_pair_given_prior(y1, y2, cplx{0.0, 0.0},
                                    params.signal_gain() + params.noise.sigma_a2, params, rho, quad);
}

}  // namespace splitrx
