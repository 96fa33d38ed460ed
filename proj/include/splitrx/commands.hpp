// SPDX-License-Identifier: Apache-2.0
//
// CSV-producing commands behind the `splitrx` executable. Every command
// writes its header line first; numbers use 6 significant digits and rows
// end with '\n', so output is byte-stable for fixed inputs and seed.
#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "splitrx/channel_model.hpp"
#include "splitrx/mi_estimator.hpp"

namespace splitrx::cli {

struct ScenarioSpec {
    NoiseProfile noise;
    double power = 100.0;
    double h_mag = 1.0;
    EstimatorConfig estimator;

    ChannelParams params() const { return {power, h_mag, noise}; }
    void validate() const;
};

enum class MiMode { mc, approx, both };

MiMode parse_mode(const std::string& s);

/// "%.6g"; empty string for NaN (an unselected column).
std::string format_number(double v);

/// P = 10^(dB / 10).
double power_from_snr_db(double db);

/// 0, step, 2 step, ..., 1 (the last point is exactly 1).
std::vector<double> default_grid(double step);

/// The eight noise rows of the reference table, in order.
std::vector<NoiseProfile> table_scenarios();
std::vector<double> table_powers();

inline constexpr const char* kMiHeader = "rho,mi_mc,stderr,mi_approx";
inline constexpr const char* kTableHeader = "sigma_a2,sigma_cov2,sigma_rec2,power,rho_star,g_mi,g_mi_pct,beta";
inline constexpr const char* kTableMcHeader =
    "sigma_a2,sigma_cov2,sigma_rec2,power,rho_star,g_mi,g_mi_pct,beta,rho_star_mc,g_mi_mc";
inline constexpr const char* kOptimalRhoHeader = "rho_star,regime,upsilon,phi,psi";

/// One row. The MC estimate uses point_seed(seed, rho), so it equals the
/// matching row of cmd_sweep.
void cmd_mi(const ScenarioSpec& spec, double rho, MiMode mode, std::ostream& out);

void cmd_sweep(const ScenarioSpec& spec, std::span<const double> grid, MiMode mode,
               std::ostream& out);

/// g_mi_pct is written in percent. With `with_mc`, rho_star_mc is the MC
/// argmax over `mc_grid` (common random numbers) and g_mi_mc its MC gain
/// over rho = 1 on the same grid.
void cmd_table(std::span<const NoiseProfile> scenarios, std::span<const double> powers,
               const ScenarioSpec& base, bool with_mc, std::span<const double> mc_grid,
               std::ostream& out);

void cmd_optimal_rho(const NoiseProfile& noise, std::ostream& out);

}  // namespace splitrx::cli
