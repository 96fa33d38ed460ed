// SPDX-License-Identifier: Apache-2.0
//
// splitrx: mutual-information analysis of the ED-CD splitting receiver.
//
//   splitrx mi          --rho R [--mode mc|approx|both]
//   splitrx sweep       [--grid-step S] [--mode ...]
//   splitrx table       [--mc] [--grid-step S]
//   splitrx optimal-rho
//
// Scenario flags (any subcommand): --sigma-a2 --sigma-cov2 --sigma-rec2
// --power | --snr-db, --h-mag; estimator flags: --samples --mixture
// --quad-order --batches --seed --method. Output is CSV on stdout or --out.
//
// Exit codes: 0 ok, 2 invalid flags or values, 3 numerical failure.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "splitrx/commands.hpp"
#include "splitrx/errors.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
    using namespace splitrx;

    CLI::App app{"Mutual-information analysis of the ED-CD splitting receiver"};
    app.require_subcommand(1);

    cli::ScenarioSpec spec;
    std::optional<double> sigma_a2, sigma_cov2, sigma_rec2, power, snr_db, h_mag;
    double rho = 0.0;
    double grid_step = 0.05;
    std::string mode = "both";
    std::string method = "collapsed";
    bool with_mc = false;
    std::string out_path;

    auto* o_power = app.add_option("--power", power, "average transmit power P (linear)");
    auto* o_snr = app.add_option("--snr-db", snr_db, "P = 10^(dB/10) with |h| = 1");
    auto* o_h = app.add_option("--h-mag", h_mag, "channel magnitude |h| (default 1)");
    o_power->excludes(o_snr);
    o_snr->excludes(o_h);
    app.add_option("--sigma-a2", sigma_a2, "antenna noise variance (default 1)");
    app.add_option("--sigma-cov2", sigma_cov2, "conversion noise variance (default 1)");
    app.add_option("--sigma-rec2", sigma_rec2, "rectifier noise variance (default 1)");
    app.add_option("--grid-step", grid_step, "rho grid step for sweep and table --mc")->capture_default_str();
    app.add_option("--samples", spec.estimator.n_outer, "outer Monte-Carlo samples")->capture_default_str();
    app.add_option("--mixture", spec.estimator.l_mixture, "mixture size (quadrature_mixture method)")
        ->capture_default_str();
    app.add_option("--quad-order", spec.estimator.quad_order, "quadrature order")->capture_default_str();
    app.add_option("--batches", spec.estimator.n_batches, "batches for the standard error")
        ->capture_default_str();
    app.add_option("--seed", spec.estimator.seed, "master seed")->capture_default_str();
    app.add_option("--method", method, "density route: collapsed | quadrature_mixture")
        ->check(CLI::IsMember({"collapsed", "quadrature_mixture"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "output file (default stdout)");

    auto* mi = app.add_subcommand("mi", "MI at one splitting ratio")->fallthrough();
    mi->add_option("--rho", rho, "splitting ratio in [0, 1]")->required();
    mi->add_option("--mode", mode, "mc | approx | both")->capture_default_str();
    auto* sweep = app.add_subcommand("sweep", "MI over a rho grid")->fallthrough();
    sweep->add_option("--mode", mode, "mc | approx | both")->capture_default_str();
    auto* table = app.add_subcommand("table", "optimal ratio and gains per scenario")->fallthrough();
    table->add_flag("--mc", with_mc, "add Monte-Carlo argmax and gain columns");
    auto* opt = app.add_subcommand("optimal-rho", "closed-form optimal splitting ratio")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (sigma_a2) spec.noise.sigma_a2 = *sigma_a2;
    if (sigma_cov2) spec.noise.sigma_cov2 = *sigma_cov2;
    if (sigma_rec2) spec.noise.sigma_rec2 = *sigma_rec2;
    if (h_mag) spec.h_mag = *h_mag;
    spec.estimator.method =
        method == "collapsed" ? DensityMethod::collapsed : DensityMethod::quadrature_mixture;

    std::ostringstream csv;
    try {
        if (snr_db) spec.power = cli::power_from_snr_db(*snr_db);
        if (power) spec.power = *power;
        if (mi->parsed()) {
            cli::cmd_mi(spec, rho, cli::parse_mode(mode), csv);
        } else if (sweep->parsed()) {
            const auto grid = cli::default_grid(grid_step);
            cli::cmd_sweep(spec, grid, cli::parse_mode(mode), csv);
        } else if (table->parsed()) {
            std::vector<NoiseProfile> scenarios = cli::table_scenarios();
            if (sigma_a2 || sigma_cov2 || sigma_rec2) scenarios = {spec.noise};
            std::vector<double> powers = cli::table_powers();
            if (power || snr_db) powers = {spec.power};
            const auto grid = cli::default_grid(grid_step);
            cli::cmd_table(scenarios, powers, spec, with_mc, grid, csv);
        } else if (opt->parsed()) {
            cli::cmd_optimal_rho(spec.noise, csv);
        }
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    }

    if (out_path.empty()) {
        std::cout << csv.str();
        return std::cout ? 0 : 1;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        std::cerr << "cannot open " << out_path << '\n';
        return kExitUsage;
    }
    file << csv.str();
    return file ? 0 : 1;
}
