// SPDX-License-Identifier: Apache-2.0
#include "splitrx/commands.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "splitrx/analytic.hpp"
#include "splitrx/optimizer.hpp"

namespace splitrx::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void write_mi_row(std::ostream& out, double rho, double mc, double se, double approx) {
    out << format_number(rho) << ',' << format_number(mc) << ',' << format_number(se) << ','
        << format_number(approx) << '\n';
}

void write_point(const ScenarioSpec& spec, double rho, MiMode mode, std::ostream& out) {
    const ChannelParams params = spec.params();
    double approx = kNaN;
    if (mode != MiMode::mc && rho > 0.0) approx = analytic::mi_high_snr(params, rho);
    double mc = kNaN;
    double se = kNaN;
    if (mode != MiMode::approx) {
        EstimatorConfig cfg = spec.estimator;
        cfg.seed = point_seed(spec.estimator.seed, rho);
        const MiEstimate e = estimate_mi(params, SplittingRatio(rho), cfg);
        mc = e.bits;
        se = e.std_error;
    }
    write_mi_row(out, rho, mc, se, approx);
}

}  // namespace

void ScenarioSpec::validate() const {
    params().validate();
    estimator.validate();
}

MiMode parse_mode(const std::string& s) {
    if (s == "mc") return MiMode::mc;
    if (s == "approx") return MiMode::approx;
    if (s == "both") return MiMode::both;
    throw std::invalid_argument("mode must be one of mc, approx, both");
}

std::string format_number(double v) {
    if (std::isnan(v)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
    return buf;
}

double power_from_snr_db(double db) {
    if (!std::isfinite(db)) throw std::invalid_argument("SNR in dB must be finite");
    return std::pow(10.0, db / 10.0);
}

std::vector<double> default_grid(double step) {
    if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("grid step must lie in (0, 1]");
    std::vector<double> g;
    const auto cells = static_cast<long>(std::ceil(1.0 / step - 1e-9));
    for (long i = 0; i < cells; ++i) g.push_back(static_cast<double>(i) * step);
    g.push_back(1.0);
    return g;
}

std::vector<NoiseProfile> table_scenarios() {
    return {
        {0.01, 1.0, 1.0}, {0.01, 1.0, 0.1}, {0.01, 1.0, 0.01}, {0.01, 1.0, 0.001},
        {1.0, 1.0, 1.0},  {1.0, 1.0, 0.1},  {1.0, 1.0, 0.01},  {1.0, 1.0, 0.001},
    };
}

std::vector<double> table_powers() { return {10.0, 100.0, 1000.0, 10000.0}; }

void cmd_mi(const ScenarioSpec& spec, double rho, MiMode mode, std::ostream& out) {
    spec.validate();
    SplittingRatio{rho};
    if (mode == MiMode::approx && rho == 0.0)
        throw std::invalid_argument("the high-SNR approximation is undefined at rho = 0");
    out << kMiHeader << '\n';
    write_point(spec, rho, mode, out);
}

void cmd_sweep(const ScenarioSpec& spec, std::span<const double> grid, MiMode mode,
               std::ostream& out) {
    spec.validate();
    if (grid.empty()) throw std::invalid_argument("rho grid must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SplittingRatio{grid[i]};
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("rho grid must be strictly increasing");
    }
    out << kMiHeader << '\n';
    for (double rho : grid) write_point(spec, rho, mode, out);
}

void cmd_table(std::span<const NoiseProfile> scenarios, std::span<const double> powers,
               const ScenarioSpec& base, bool with_mc, std::span<const double> mc_grid,
               std::ostream& out) {
    if (scenarios.empty() || powers.empty())
        throw std::invalid_argument("table needs at least one scenario and one power");
    if (with_mc) base.estimator.validate();
    out << (with_mc ? kTableMcHeader : kTableHeader) << '\n';
    for (const NoiseProfile& noise : scenarios) {
        const analytic::GainBreakdown asym = analytic::gain_asymptotic(noise);
        for (double p : powers) {
            const ChannelParams params{p, base.h_mag, noise};
            params.validate();
            const analytic::FiniteGain g = analytic::gain_finite(params);
            out << format_number(noise.sigma_a2) << ',' << format_number(noise.sigma_cov2) << ','
                << format_number(noise.sigma_rec2) << ',' << format_number(p) << ','
                << format_number(g.rho_star) << ',' << format_number(g.g_mi) << ','
                << format_number(100.0 * g.g_mi_pct) << ',' << format_number(asym.beta);
            if (with_mc) {
                std::vector<SweepPoint> evaluated;
                const ScanResult best = argmax_mc(params, base.estimator, mc_grid, evaluated);
                double at_one = kNaN;
                for (const auto& e : evaluated)
                    if (e.rho == 1.0) at_one = e.estimate.bits;
                out << ',' << format_number(best.rho_star) << ','
                    << format_number(best.value - at_one);
            }
            out << '\n';
        }
    }
}

void cmd_optimal_rho(const NoiseProfile& noise, std::ostream& out) {
    noise.validate();
    const double rho_star = analytic::optimal_rho(noise);
    double upsilon = kNaN;
    double phi = kNaN;
    double psi = kNaN;
    try {
        const analytic::Roots r = analytic::roots_upsilon_phi(noise);
        upsilon = r.upsilon;
        phi = r.phi;
        psi = r.psi;
    } catch (const std::domain_error&) {
        // Degenerate quadratic: a single root at rho = 1, no Upsilon/Phi.
    }
    out << kOptimalRhoHeader << '\n'
        << format_number(rho_star) << ',' << analytic::to_string(analytic::regime(noise)) << ','
        << format_number(upsilon) << ',' << format_number(phi) << ',' << format_number(psi) << '\n';
}

}  // namespace splitrx::cli
