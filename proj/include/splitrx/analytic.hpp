// SPDX-License-Identifier: Apache-2.0
//
// Closed-form results for the splitting receiver with Gaussian input: the
// high-SNR mutual information, the optimal splitting ratio, the exact MI of
// the coherent-only receiver, an upper bound for the envelope-only receiver,
// and the gain of splitting over the best of the two. All values in bits.
#pragma once

#include "splitrx/channel_model.hpp"

namespace splitrx::analytic {

/// High-SNR approximation of I(x; y1, y2), rho in (0, 1]. Asymptotically
/// tight as P grows. Throws std::invalid_argument at rho = 0.
double mi_high_snr(const ChannelParams& params, double rho);

/// Shorthand quantities of the cone-normal form.
struct AsymptoticTerms {
    double k2;      ///< sigma_cov2 / (2 sigma_rec2)
    double zeta2;   ///< 1 + sigma_a2 / (P |h|^2)
    double theta1;  ///< rho
    double theta2;  ///< 1 - rho
};

AsymptoticTerms asymptotic_terms(const ChannelParams& params, double rho);

/// The same approximation written in cone-normal coordinates, S = P|h|^2:
///   log2(T1 z^2 S sqrt(k^2 T2 z^2 / T1 + 1))
///     - 1/2 log2((T1 sa + sc) ((T1 + T2 k^2) sa + sc)).
/// Algebraically identical to mi_high_snr.
double mi_cone_normal(const ChannelParams& params, double rho);

/// Coefficients of the dominant (large P) numerator a rho^2 + b rho + c of
/// the derivative of 2^(2 I) in rho.
struct QuadraticCoefficients {
    double a;
    double b;
    double c;

    double operator()(double rho) const { return (a * rho + b) * rho + c; }
};

QuadraticCoefficients quadratic_coefficients(const ChannelParams& params);

enum class Regime {
    splitting,  ///< sigma_cov2 > 4 sigma_rec2: interior optimum
    cd_only,    ///< otherwise: coherent detection alone is optimal
};

const char* to_string(Regime r);

struct Roots {
    double upsilon;
    double phi;
    double psi;
};

/// Both roots of the quadratic and the discriminant term Psi, evaluated in
/// factored form. Throws std::domain_error when
/// (sigma_cov2 - 2 sigma_rec2)(sigma_cov2 - 4 sigma_rec2) == 0, where the
/// quadratic degenerates to a linear equation with root rho = 1, and when
/// Psi < 0 (no real roots; only possible with sigma_cov2 < 2 sigma_rec2).
Roots roots_upsilon_phi(const NoiseProfile& noise);

/// Optimal splitting ratio in the high-SNR regime; independent of P.
double optimal_rho(const NoiseProfile& noise);

Regime regime(const NoiseProfile& noise);

/// log2(1 + P|h|^2 / (sigma_a2 + sigma_cov2)): exact MI at rho = 1.
double mi_cd_exact(const ChannelParams& params);

/// 1/2 log2(P|h|^2 / sigma_a2) + 1/2 log2(e / (2 pi)): bound on the MI at rho = 0.
double mi_ed_upper_bound(const ChannelParams& params);

struct FiniteGain {
    double g_mi;      ///< bits over the coherent-only receiver
    double g_mi_pct;  ///< g_mi relative to the coherent-only MI (a ratio, not percent)
    double rho_star;
};

/// Gain of the splitting receiver at the optimal ratio over the coherent
/// receiver at finite P: mi_high_snr(rho*) - mi_cd_exact. Zero when rho* = 1.
FiniteGain gain_finite(const ChannelParams& params);

struct GainBreakdown {
    double upsilon = 1.0;
    double phi = 0.0;
    double psi = 0.0;
    double beta = 0.0;
    double k_big = 0.0;
    double m_big = 0.0;
    Regime regime = Regime::cd_only;
};

/// Limit of the gain as P -> infinity: beta = log2(Upsilon) + 1/2 log2(K / M)
/// in the splitting regime, zero otherwise. The relative gain tends to zero.
GainBreakdown gain_asymptotic(const NoiseProfile& noise);

}  // namespace splitrx::analytic
