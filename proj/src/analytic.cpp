// SPDX-License-Identifier: Apache-2.0
#include "splitrx/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace splitrx::analytic {

namespace {

void require_open_ratio(double rho) {
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("high-SNR approximation needs rho in (0, 1]");
}

}  // namespace

double mi_high_snr(const ChannelParams& params, double rho) {
    params.validate();
    require_open_ratio(rho);
    const double s = params.signal_gain();
    const double sa = params.noise.sigma_a2;
    const double sc = params.noise.sigma_cov2;
    const double sr = params.noise.sigma_rec2;
    const double first = rho * (s + sa) * (s + sa) / (s * (rho * sa + sc));
    const double second = (sc * (1.0 - rho) * (s + sa) + 2.0 * rho * sr * s) /
                          (2.0 * sr * sa * rho + sc * sa * (1.0 - rho) + 2.0 * sr * sc);
    return 0.5 * std::log2(first) + 0.5 * std::log2(second);
}

AsymptoticTerms asymptotic_terms(const ChannelParams& params, double rho) {
    params.validate();
    require_open_ratio(rho);
    const NoiseProfile& nz = params.noise;
    return {nz.sigma_cov2 / (2.0 * nz.sigma_rec2), 1.0 + nz.sigma_a2 / params.signal_gain(), rho,
            1.0 - rho};
}

double mi_cone_normal(const ChannelParams& params, double rho) {
    const AsymptoticTerms t = asymptotic_terms(params, rho);
    const double s = params.signal_gain();
    const double sa = params.noise.sigma_a2;
    const double sc = params.noise.sigma_cov2;
    const double lead =
        std::log2(t.theta1 * t.zeta2 * s * std::sqrt(t.k2 * t.theta2 * t.zeta2 / t.theta1 + 1.0));
    const double tail =
        0.5 * std::log2((t.theta1 * sa + sc) * ((t.theta1 + t.theta2 * t.k2) * sa + sc));
    return lead - tail;
}

QuadraticCoefficients quadratic_coefficients(const ChannelParams& params) {
    params.validate();
    const double p = params.signal_gain();
    const double sa = params.noise.sigma_a2;
    const double c2 = params.noise.sigma_cov2;
    const double r2 = params.noise.sigma_rec2;
    const double c4 = c2 * c2;
    const double c6 = c4 * c2;
    const double r4 = r2 * r2;
    return {
        p * sa * c6 - 6.0 * p * sa * c4 * r2 + 8.0 * p * sa * c2 * r4,
        4.0 * p * sa * c4 * r2 - 2.0 * p * sa * c6 - 4.0 * p * c6 * r2 + 8.0 * p * c4 * r4,
        p * sa * c6 + 2.0 * p * c6 * r2,
    };
}

const char* to_string(Regime r) { return r == Regime::splitting ? "splitting" : "cd_only"; }

Roots roots_upsilon_phi(const NoiseProfile& noise) {
    noise.validate();
    const double sa = noise.sigma_a2;
    const double c2 = noise.sigma_cov2;
    const double r2 = noise.sigma_rec2;
    const double f2 = c2 - 2.0 * r2;
    const double f4 = c2 - 4.0 * r2;
    const double denom = sa * f2 * f4;
    if (denom == 0.0)
        throw std::domain_error("degenerate quadratic: sigma_cov2 equals 2 or 4 times sigma_rec2");
    const double psi = c2 * c2 * f2 * (sa + c2 - 2.0 * r2) * r2 * (sa + 2.0 * r2);
    if (psi < 0.0) throw std::domain_error("quadratic has no real roots for this noise profile");
    const double root = std::sqrt(2.0 * psi);
    const double centre = c2 * f2 * (sa + 2.0 * r2);
    return {(centre - root) / denom, (centre + root) / denom, psi};
}

Regime regime(const NoiseProfile& noise) {
    noise.validate();
    return noise.sigma_cov2 > 4.0 * noise.sigma_rec2 ? Regime::splitting : Regime::cd_only;
}

double optimal_rho(const NoiseProfile& noise) {
    if (regime(noise) == Regime::cd_only) return 1.0;
    return roots_upsilon_phi(noise).upsilon;
}

double mi_cd_exact(const ChannelParams& params) {
    if (!(params.power >= 0.0)) throw std::invalid_argument("power must be nonnegative");
    params.noise.validate();
    const double s = params.power * params.h_mag * params.h_mag;
    return std::log2(1.0 + s / (params.noise.sigma_a2 + params.noise.sigma_cov2));
}

double mi_ed_upper_bound(const ChannelParams& params) {
    params.validate();
    return 0.5 * std::log2(params.signal_gain() / params.noise.sigma_a2) +
           0.5 * std::log2(M_E / (2.0 * M_PI));
}

FiniteGain gain_finite(const ChannelParams& params) {
    const double rho_star = optimal_rho(params.noise);
    if (rho_star == 1.0) return {0.0, 0.0, 1.0};
    const double baseline = mi_cd_exact(params);
    const double g = mi_high_snr(params, rho_star) - baseline;
    return {g, g / baseline, rho_star};
}

GainBreakdown gain_asymptotic(const NoiseProfile& noise) {
    GainBreakdown out;
    out.regime = regime(noise);
    if (out.regime == Regime::cd_only) return out;

    const Roots roots = roots_upsilon_phi(noise);
    const double sa = noise.sigma_a2;
    const double c2 = noise.sigma_cov2;
    const double r2 = noise.sigma_rec2;
    const double c4 = c2 * c2;
    const double c6 = c4 * c2;
    const double r4 = r2 * r2;
    const double root = std::sqrt(2.0 * roots.psi);
    const double quartic = c4 - 6.0 * c2 * r2 + 8.0 * r4;

    out.upsilon = roots.upsilon;
    out.phi = roots.phi;
    out.psi = roots.psi;
    out.k_big = (sa + c2) * (sa + c2) * quartic * quartic *
                (2.0 * sa * c2 * r2 + 2.0 * c4 * r2 - 4.0 * c2 * r4 - root);
    out.m_big = (sa * c2 * (c2 - 2.0 * r2) + c6 - 4.0 * c4 * r2 + 4.0 * c2 * r4 - root) *
                (4.0 * sa * r2 * (c2 - 2.0 * r2) + 2.0 * c4 * r2 - 4.0 * c2 * r4 - root) * c4 *
                (sa + 2.0 * r2);
    out.beta = std::log2(roots.upsilon) + 0.5 * std::log2(out.k_big / out.m_big);
    return out;
}

}  // namespace splitrx::analytic
