// Copyright 2026 The lruqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "lruqec/lru/cma_es.hpp"
#include "lruqec/lru/landscape.hpp"

using namespace lruqec;
using namespace lruqec::lru;

TEST_CASE("jump rate formula") {
    CHECK(jump_rate(0.0, 0.3, 0.2) == 0.0);
    CHECK(jump_rate(2.0, 0.5, 0.5) == doctest::Approx(2.0));
    CHECK(jump_rate(1.0, 0.3, 0.2) == doctest::Approx(1.0));
    CHECK_THROWS_AS(jump_rate(1.0, 0.0, 0.0), std::invalid_argument);
    // Homogeneity: scaling the drive by c scales the rate by c^2.
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const double omega = rng.uniform() + 0.1;
        const double g2 = rng.uniform() + 0.05;
        const double gd = rng.uniform();
        const double c = 1.0 + 3.0 * rng.uniform();
        CHECK(jump_rate(c * omega, g2, gd) ==
              doctest::Approx(c * c * jump_rate(omega, g2, gd)).epsilon(1e-12));
    }
}

TEST_CASE("measurement dephasing from pointer fields") {
    CHECK(measurement_dephasing({1.0, 0.0}, {1.0, 0.0}, 0.068) == doctest::Approx(0.0));
    CHECK(measurement_dephasing({0.0, 1.0}, {1.0, 0.0}, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("device parameter validation and derived quantities") {
    DeviceParams dev;
    CHECK_NOTHROW(dev.validate());
    CHECK(dev.n_crit() > 5.0);
    CHECK(dev.omega_ef_ghz() == doctest::Approx(5.635));
    CHECK_NOTHROW(check_dispersive_drive(dev, LRUPulseParams{}.resonator_amp_rad_ns));
    CHECK_THROWS_AS(check_dispersive_drive(dev, 2.0), std::invalid_argument);
    dev.fock_cutoff = 5;
    CHECK_THROWS_AS(dev.validate(), std::invalid_argument);
}

TEST_CASE("pulse envelopes: square resonator drive, sine-squared transmon edges") {
    LRUPulseParams p;
    p.t_delay_ns = 100.0;
    p.rise_fall_ns = 10.0;
    CHECK(p.resonator_envelope(-1.0) == 0.0);
    CHECK(p.resonator_envelope(0.0) == 1.0);
    CHECK(p.resonator_envelope(379.9) == 1.0);
    CHECK(p.resonator_envelope(380.0) == 0.0);
    CHECK(p.transmon_envelope(99.0) == 0.0);
    CHECK(p.transmon_envelope(105.0) == doctest::Approx(0.5));  // sin^2(pi/4)
    CHECK(p.transmon_envelope(110.0) == doctest::Approx(1.0));
    CHECK(p.transmon_envelope(200.0) == 1.0);
    CHECK(p.transmon_envelope(375.0) == doctest::Approx(0.5));
    CHECK(p.transmon_envelope(381.0) == 0.0);
    p.t_delay_ns = 375.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("no drives: populations stay put") {
    DeviceParams dev;
    dev.t1_us = 1e9;  // effectively no dissipation on the transmon
    dev.t2_star_us = 1e9;
    LRUPulseParams pulse;
    pulse.transmon_amp_rad_ns = 0.0;
    pulse.resonator_amp_rad_ns = 0.0;
    TrajectoryOptions opt;
    opt.n_traj = 16;
    opt.seed = 3;
    for (int level = 0; level < 3; ++level) {
        const LruRun run = evolve_lru_level(dev, pulse, level, opt);
        CHECK(run.transfer[static_cast<size_t>(level)][static_cast<size_t>(level)] ==
              doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("trajectory norm bookkeeping: renormalized samples stay unit") {
    DeviceParams dev;
    LRUPulseParams pulse;
    TrajectoryOptions opt;
    opt.n_traj = 8;
    opt.seed = 7;
    const LruRun run = evolve_lru_level(dev, pulse, 2, opt);
    for (size_t i = 0; i < run.t_grid_ns.size(); ++i) {
        const auto& pops = run.mean_pops[2][i];
        CHECK(pops[0] + pops[1] + pops[2] == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("resonant transmon drive without resonator drive gives Rabi oscillations") {
    DeviceParams dev;
    LRUPulseParams pulse;
    pulse.resonator_amp_rad_ns = 0.0;
    pulse.transmon_freq_ghz = dev.omega_ef_ghz();
    pulse.transmon_amp_rad_ns = 0.08;
    pulse.t_delay_ns = 0.0;
    TrajectoryOptions opt;
    opt.n_traj = 48;
    opt.seed = 11;
    opt.n_threads = 2;
    const LruRun run = evolve_lru_level(dev, pulse, 1, opt);
    const double period = 2.0 * Rng::kPi / pulse.transmon_amp_rad_ns;
    double pmin = 1.0, pmax = 0.0;
    for (size_t i = 0; i < run.t_grid_ns.size(); ++i) {
        if (run.t_grid_ns[i] > period + 10.0) {
            break;
        }
        pmin = std::min(pmin, run.mean_pops[1][i][1]);
        pmax = std::max(pmax, run.mean_pops[1][i][1]);
    }
    CHECK(pmax - pmin > 0.5);
}

TEST_CASE("calibrated default pulse removes leakage and spares the readout") {
    DeviceParams dev;
    LRUPulseParams pulse;
    TrajectoryOptions opt;
    opt.n_traj = 256;
    opt.seed = 77;
    opt.n_threads = 2;
    const LruRun run = evolve_lru(dev, pulse, opt);
    CHECK(1.0 - run.transfer[2][2] >= 0.90);  // removal fraction
    CHECK(run.transfer[2][1] > 0.85);         // lands in |e>
    CHECK(run.transfer[0][0] > 0.97);         // |g> untouched
    const ReadoutClassification cls = classify_readout(run, kDefaultReadoutNoiseScale, 5);
    CHECK(ge_fidelity(cls.assignment) > 0.97);
}

TEST_CASE("classification: zero noise and well-separated means give the identity") {
    DeviceParams dev;
    dev.t1_us = 1e9;  // suppress transfer during the window
    dev.t2_star_us = 1e9;
    LRUPulseParams pulse;
    pulse.transmon_amp_rad_ns = 0.0;   // standard measurement, no LRU drive
    pulse.resonator_amp_rad_ns = 0.15;  // photon tail well below n_crit
    TrajectoryOptions opt;
    opt.n_traj = 64;
    opt.seed = 13;
    opt.n_threads = 2;
    const LruRun run = evolve_lru(dev, pulse, opt);
    const ReadoutClassification cls = classify_readout(run, 0.0, 3);
    for (int s = 0; s < 3; ++s) {
        CHECK(cls.assignment(s, s) == doctest::Approx(1.0));
    }
}

TEST_CASE("classification input validation") {
    LruRun run;
    run.signals[0] = {Complex(1.0, 0.0)};
    run.signals[1] = {};
    run.signals[2] = {Complex(0.0, 1.0)};
    CHECK_THROWS_AS(classify_readout(run, 0.0, 1), std::invalid_argument);
    run.signals[1] = {Complex(1.0, 0.0)};  // degenerate with level 0
    run.signals[0] = {Complex(1.0, 0.0)};
    CHECK_THROWS_AS(classify_readout(run, 0.0, 1), std::runtime_error);
}

TEST_CASE("single-point landscape equals a direct evaluation") {
    DeviceParams dev;
    LRUPulseParams pulse;
    LandscapeConfig cfg;
    cfg.axes = LandscapeAxes::amp_amp;
    cfg.x_values = {pulse.transmon_amp_rad_ns};
    cfg.y_values = {pulse.resonator_amp_rad_ns};
    cfg.trajectories.n_traj = 64;
    cfg.trajectories.seed = 21;
    cfg.trajectories.n_threads = 2;
    const Landscape land = sweep_landscape(dev, pulse, cfg);
    REQUIRE(land.points.size() == 1);

    TrajectoryOptions opt = cfg.trajectories;
    opt.seed = Rng::stream(cfg.trajectories.seed, 0).next_u64();
    opt.n_threads = 1;
    const LruRun direct = evolve_lru(dev, pulse, opt);
    CHECK(land.points[0].residual_f == doctest::Approx(direct.transfer[2][2]));
    CHECK_THROWS_AS(sweep_landscape(dev, pulse, LandscapeConfig{}), std::invalid_argument);
}

TEST_CASE("cma-es converges on a quadratic bowl") {
    const std::vector<double> target = {0.3, -0.2, 0.7};
    auto cost = [&](const std::vector<double>& x) {
        double acc = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            acc += (x[i] - target[i]) * (x[i] - target[i]);
        }
        return acc;
    };
    CmaOptions opt;
    opt.lower = {-2.0, -2.0, -2.0};
    opt.upper = {2.0, 2.0, 2.0};
    opt.max_generations = 60;
    opt.seed = 5;
    const CmaResult res = cma_minimize(cost, {0.0, 0.0, 0.0}, opt);
    CHECK(res.evaluations <= 200 * 3);
    for (size_t i = 0; i < target.size(); ++i) {
        CHECK(std::abs(res.best_x[i] - target[i]) < 1e-3);
    }
    // Best-so-far trace is monotone non-increasing.
    for (size_t g = 1; g < res.best_cost_per_generation.size(); ++g) {
        CHECK(res.best_cost_per_generation[g] <= res.best_cost_per_generation[g - 1]);
    }
}

TEST_CASE("cma-es respects a one-generation budget") {
    auto cost = [](const std::vector<double>& x) { return x[0] * x[0]; };
    CmaOptions opt;
    opt.lower = {-1.0};
    opt.upper = {1.0};
    opt.max_generations = 1;
    opt.seed = 9;
    const CmaResult res = cma_minimize(cost, {0.5}, opt);
    CHECK(res.evaluations == 4 + static_cast<int>(3.0 * std::log(1.0)));
    CHECK(res.best_cost_per_generation.size() == 1);
    CmaOptions bad = opt;
    bad.max_generations = 0;
    CHECK_THROWS_AS(cma_minimize(cost, {0.5}, bad), std::invalid_argument);
}

TEST_CASE("cma-es rejects non-finite costs") {
    auto cost = [](const std::vector<double>&) { return std::nan(""); };
    CmaOptions opt;
    opt.lower = {-1.0};
    opt.upper = {1.0};
    opt.max_generations = 2;
    opt.seed = 1;
    CHECK_THROWS_AS(cma_minimize(cost, {0.0}, opt), std::runtime_error);
}
