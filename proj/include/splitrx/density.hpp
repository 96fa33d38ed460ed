// SPDX-License-Identifier: Apache-2.0
//
// Log-domain densities of the receiver outputs (y1, y2).
//
// Two independent evaluation routes are provided:
//
//  * the direct route integrates the conditional f(y1|x,w) f(y2|x,w) over the
//    antenna noise w with a tensor Gauss-Hermite rule, and the marginal over
//    (x, w) with a Monte-Carlo mixture of reference draws;
//
//  * the collapsed route works with u = sqrt(P)|h| x + w, which is complex
//    Gaussian both given x (mean sqrt(P)|h| x, variance sigma_a2) and
//    unconditionally (mean 0, variance P|h|^2 + sigma_a2). The y1 factor is
//    then Gaussian in u and integrates in closed form, the angle of u
//    integrates to a Rician law for |u|, and only a one-dimensional integral
//    over |u| remains. This is exact up to the radial quadrature and is what
//    the mutual-information estimator uses by default.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "splitrx/channel_model.hpp"
#include "splitrx/quadrature.hpp"

namespace splitrx {

/// exp() underflows below this; all mixture terms under it is an error.
inline constexpr double kLogUnderflow = -745.0;

double log_pdf_y1_given_xw(cplx y1, cplx x, cplx w, const ChannelParams& params,
                           SplittingRatio rho);

double log_pdf_y2_given_xw(double y2, cplx x, cplx w, const ChannelParams& params,
                           SplittingRatio rho);

/// log f(y1, y2 | x) by tensor Gauss-Hermite quadrature over w, with
/// w = sigma_a (t_re + j t_im) against the weight exp(-t_re^2 - t_im^2).
/// Throws NumericalError when the result is not finite.
double log_pdf_pair_given_x(cplx y1, double y2, cplx x, const ChannelParams& params,
                            SplittingRatio rho, const QuadratureRule& rule);

struct MixturePoint {
    cplx x;
    cplx w;
};

/// L reference draws of (x, w) from their priors, deterministic in seed.
std::vector<MixturePoint> draw_mixture(const ChannelParams& params, std::size_t size,
                                       std::uint64_t seed);

/// log of (1/L) sum_j f(y1|x_j,w_j) f(y2|x_j,w_j). Throws std::invalid_argument
/// on an empty mixture and NumericalError when every term underflows.
double log_pdf_pair_marginal(cplx y1, double y2, const ChannelParams& params, SplittingRatio rho,
                             std::span<const MixturePoint> mixture);

/// Composite Gauss-Legendre rule for the radial integral of the collapsed route.
class EnvelopeQuadrature {
public:
    static constexpr int kNodesPerPanel = 8;

    explicit EnvelopeQuadrature(int panels);

    int panels() const { return panels_; }
    const LegendreRule& panel_rule() const { return rule_; }
    const std::vector<double>& log_weights() const { return log_weights_; }

private:
    int panels_;
    LegendreRule rule_;
    std::vector<double> log_weights_;
};

/// log of  int_0^inf Rice(r; a, v) N(y2; scale * r, sigma2) dr,
/// where Rice(r; a, v) is the law of |u| for u ~ CN(mu, v), |mu| = a.
/// Requires scale > 0, v > 0, sigma2 > 0.
double log_envelope_kernel(double y2, double a, double v, double scale, double sigma2,
                           const EnvelopeQuadrature& quad);

/// log f(y1, y2) when u = sqrt(P)|h| x + w ~ CN(mean, var).
double log_pdf_pair_given_prior(cplx y1, double y2, cplx mean, double var,
                                const ChannelParams& params, SplittingRatio rho,
                                const EnvelopeQuadrature& quad);

/// log f(y1, y2 | x) by the collapsed route.
double log_pdf_pair_given_x_collapsed(cplx y1, double y2, cplx x, const ChannelParams& params,
                                      SplittingRatio rho, const EnvelopeQuadrature& quad);

/// log f(y1, y2) by the collapsed route.
double log_pdf_pair_collapsed(cplx y1, double y2, const ChannelParams& params, SplittingRatio rho,
                              const EnvelopeQuadrature& quad);

}  // namespace splitrx
