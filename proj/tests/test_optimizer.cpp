// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "splitrx/analytic.hpp"
#include "splitrx/commands.hpp"
#include "splitrx/errors.hpp"
#include "splitrx/optimizer.hpp"

using namespace splitrx;

TEST_CASE("quadratic objective peaks at its vertex") {
    const ScanResult r = maximize_over_rho([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0,
                                           0.05, 1e-8);
    CHECK(r.rho_star == doctest::Approx(0.3).epsilon(1e-7));
    CHECK(r.value <= 0.0);
    CHECK(r.grid_step == 0.05);

    const ScanResult off = maximize_over_rho([](double x) { return -(x - 0.3183) * (x - 0.3183); },
                                             0.0, 1.0, 0.05, 1e-8);
    CHECK(off.refined);
    CHECK(off.rho_star == doctest::Approx(0.3183).epsilon(1e-6));
}

TEST_CASE("monotone objective ends at the upper bound") {
    const ScanResult r = maximize_over_rho([](double x) { return x; }, 0.0, 1.0, 0.1, 1e-8);
    CHECK(r.rho_star == 1.0);
    CHECK(r.value == 1.0);
    const ScanResult d = maximize_over_rho([](double x) { return -x; }, 0.2, 0.7, 0.1, 1e-8);
    CHECK(d.rho_star == 0.2);
}

TEST_CASE("high-SNR MI maximizer matches the closed-form optimal ratio") {
    const ChannelParams params{1e3, 1.0, {0.01, 1.0, 0.01}};
    const auto f = [&](double rho) {
        return rho == 0.0 ? -std::numeric_limits<double>::infinity() : analytic::mi_high_snr(params, rho);
    };
    const ScanResult r = maximize_over_rho(f, 0.0, 1.0, 0.01, 1e-7);
    CHECK(r.rho_star == doctest::Approx(0.5605).epsilon(2e-3));
    // Finite-P maximizer, not the limit root, but within 1e-3 here.
    CHECK(std::abs(r.rho_star - analytic::optimal_rho(params.noise)) < 1e-3);
    CHECK(r.value == doctest::Approx(analytic::mi_high_snr(params, r.rho_star)));
}

TEST_CASE("ties go to the smallest ratio") {
    const ScanResult r = maximize_over_rho([](double) { return 2.0; }, 0.0, 1.0, 0.25, 1e-8);
    CHECK(r.rho_star == 0.0);
    CHECK(r.value == 2.0);
}

TEST_CASE("non-finite objective is only allowed at the lower end") {
    const auto inf_lo = [](double x) {
        return x == 0.0 ? -std::numeric_limits<double>::infinity() : -x * x + x;
    };
    CHECK(maximize_over_rho(inf_lo, 0.0, 1.0, 0.1, 1e-8).rho_star == doctest::Approx(0.5).epsilon(1e-6));
    const auto nan_mid = [](double x) { return x > 0.4 && x < 0.6 ? NAN : x; };
    CHECK_THROWS_AS(maximize_over_rho(nan_mid, 0.0, 1.0, 0.1, 1e-8), NumericalError);
    CHECK_THROWS_AS(maximize_over_rho([](double x) { return x; }, 0.5, 0.5, 0.1, 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(maximize_over_rho([](double x) { return x; }, 0.0, 1.0, 0.0, 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(maximize_over_rho([](double x) { return x; }, -0.1, 1.0, 0.1, 1e-8),
                    std::invalid_argument);
}

TEST_CASE("halving the grid step moves a unimodal maximizer by at most one coarse cell") {
    for (double peak : {0.05, 0.33, 0.618, 0.97}) {
        const auto f = [&](double x) { return -std::abs(x - peak); };
        const ScanResult coarse = maximize_over_rho(f, 0.0, 1.0, 0.1, 1e-3);
        const ScanResult fine = maximize_over_rho(f, 0.0, 1.0, 0.05, 1e-3);
        CHECK(std::abs(coarse.rho_star - fine.rho_star) <= 0.1);
    }
}

TEST_CASE("Monte-Carlo argmax") {
    EstimatorConfig cfg;
    cfg.n_outer = 16000;
    cfg.n_batches = 8;
    cfg.seed = 3;

    SUBCASE("single grid point") {
        const std::vector<double> grid{0.4};
        const ChannelParams params{100.0, 1.0, {0.01, 1.0, 0.01}};
        const ScanResult r = argmax_mc(params, cfg, grid);
        CHECK(r.rho_star == 0.4);
        CHECK_FALSE(r.refined);
    }

    SUBCASE("near the optimal ratio at the narrow-antenna-noise set") {
        const ChannelParams params{100.0, 1.0, {0.01, 1.0, 0.01}};
        const auto grid = cli::default_grid(0.05);
        std::vector<SweepPoint> points;
        const ScanResult r = argmax_mc(params, cfg, grid, points);
        CHECK(std::abs(r.rho_star - 0.56) <= 0.10);
        CHECK(r.grid_step == doctest::Approx(0.05));
        REQUIRE(points.size() == grid.size());
        for (const SweepPoint& p : points) CHECK(p.estimate.bits <= r.value);

        const ScanResult again = argmax_mc(params, cfg, grid);
        CHECK(again.rho_star == r.rho_star);
        CHECK(again.value == r.value);
    }
}
