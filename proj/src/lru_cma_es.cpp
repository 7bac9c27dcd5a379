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

#include "lruqec/lru/cma_es.hpp"

#include <omp.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lruqec/rng.hpp"

namespace lruqec::lru {

CmaResult cma_minimize(const std::function<double(const std::vector<double>&)>& cost,
                       const std::vector<double>& x0, const CmaOptions& options) {
    const int d = static_cast<int>(x0.size());
    if (d < 1) {
        throw std::invalid_argument("empty search space");
    }
    if (options.lower.size() != static_cast<size_t>(d) ||
        options.upper.size() != static_cast<size_t>(d)) {
        throw std::invalid_argument("box constraints must match the dimension");
    }
    if (options.max_generations < 1) {
        throw std::invalid_argument("need at least one generation");
    }
    for (int i = 0; i < d; ++i) {
        if (!(options.lower[static_cast<size_t>(i)] < options.upper[static_cast<size_t>(i)])) {
            throw std::invalid_argument("degenerate box constraint");
        }
    }

    const int lambda =
        options.lambda > 0 ? options.lambda : 4 + static_cast<int>(3.0 * std::log(d));
    const int mu = lambda / 2;
    Eigen::VectorXd weights(mu);
    for (int i = 0; i < mu; ++i) {
        weights(i) = std::log(mu + 0.5) - std::log(i + 1.0);
    }
    weights /= weights.sum();
    const double mu_eff = 1.0 / weights.squaredNorm();

    const double c_sigma = (mu_eff + 2.0) / (d + mu_eff + 5.0);
    const double d_sigma =
        1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (d + 1.0)) - 1.0) + c_sigma;
    const double c_c = (4.0 + mu_eff / d) / (d + 4.0 + 2.0 * mu_eff / d);
    const double c_1 = 2.0 / ((d + 1.3) * (d + 1.3) + mu_eff);
    const double c_mu = std::min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) /
                                                ((d + 2.0) * (d + 2.0) + mu_eff));
    const double chi_n = std::sqrt(static_cast<double>(d)) *
                         (1.0 - 1.0 / (4.0 * d) + 1.0 / (21.0 * d * d));

    // Work in box-normalized coordinates: z in [0, 1]^d.
    auto to_unit = [&](const std::vector<double>& x) {
        Eigen::VectorXd u(d);
        for (int i = 0; i < d; ++i) {
            u(i) = (x[static_cast<size_t>(i)] - options.lower[static_cast<size_t>(i)]) /
                   (options.upper[static_cast<size_t>(i)] - options.lower[static_cast<size_t>(i)]);
        }
        return u;
    };
    auto to_box = [&](const Eigen::VectorXd& u) {
        std::vector<double> x(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) {
            const double clamped = std::clamp(u(i), 0.0, 1.0);
            x[static_cast<size_t>(i)] =
                options.lower[static_cast<size_t>(i)] +
                clamped * (options.upper[static_cast<size_t>(i)] -
                           options.lower[static_cast<size_t>(i)]);
        }
        return x;
    };

    Eigen::VectorXd mean = to_unit(x0);
    double sigma = options.sigma0;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd p_sigma = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd p_c = Eigen::VectorXd::Zero(d);

    Rng rng(options.seed);
    CmaResult result;
    result.best_cost = std::numeric_limits<double>::infinity();

    for (int gen = 0; gen < options.max_generations; ++gen) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
        if (eig.info() != Eigen::Success) {
            throw std::runtime_error("covariance eigendecomposition failed");
        }
        const Eigen::VectorXd diag_sqrt = eig.eigenvalues().cwiseMax(1e-20).cwiseSqrt();
        const Eigen::MatrixXd basis = eig.eigenvectors();

        std::vector<Eigen::VectorXd> zs(static_cast<size_t>(lambda));
        std::vector<Eigen::VectorXd> ys(static_cast<size_t>(lambda));
        std::vector<std::vector<double>> xs(static_cast<size_t>(lambda));
        for (int k = 0; k < lambda; ++k) {
            Eigen::VectorXd z(d);
            for (int i = 0; i < d; ++i) {
                z(i) = rng.normal();
            }
            zs[static_cast<size_t>(k)] = z;
            ys[static_cast<size_t>(k)] = basis * diag_sqrt.cwiseProduct(z);
            xs[static_cast<size_t>(k)] = to_box(mean + sigma * ys[static_cast<size_t>(k)]);
        }

        std::vector<double> costs(static_cast<size_t>(lambda));
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, options.n_threads))
        for (int k = 0; k < lambda; ++k) {
            try {
                costs[static_cast<size_t>(k)] = cost(xs[static_cast<size_t>(k)]);
            } catch (...) {
#pragma omp critical
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
        if (error) {
            std::rethrow_exception(error);
        }
        result.evaluations += lambda;
        for (int k = 0; k < lambda; ++k) {
            if (!std::isfinite(costs[static_cast<size_t>(k)])) {
                throw std::runtime_error("non-finite cost during CMA-ES");
            }
        }

        std::vector<int> order(static_cast<size_t>(lambda));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return costs[static_cast<size_t>(a)] < costs[static_cast<size_t>(b)];
        });
        if (costs[static_cast<size_t>(order[0])] < result.best_cost) {
            result.best_cost = costs[static_cast<size_t>(order[0])];
            result.best_x = xs[static_cast<size_t>(order[0])];
        }
        result.best_cost_per_generation.push_back(result.best_cost);

        Eigen::VectorXd y_w = Eigen::VectorXd::Zero(d);
        Eigen::VectorXd z_w = Eigen::VectorXd::Zero(d);
        for (int i = 0; i < mu; ++i) {
            y_w += weights(i) * ys[static_cast<size_t>(order[static_cast<size_t>(i)])];
            z_w += weights(i) * zs[static_cast<size_t>(order[static_cast<size_t>(i)])];
        }
        mean += sigma * y_w;

        p_sigma = (1.0 - c_sigma) * p_sigma +
                  std::sqrt(c_sigma * (2.0 - c_sigma) * mu_eff) * (basis * z_w);
        const double ps_norm = p_sigma.norm();
        const bool hsig =
            ps_norm / std::sqrt(1.0 - std::pow(1.0 - c_sigma, 2.0 * (gen + 1))) / chi_n <
            1.4 + 2.0 / (d + 1.0);
        p_c = (1.0 - c_c) * p_c +
              (hsig ? std::sqrt(c_c * (2.0 - c_c) * mu_eff) : 0.0) * y_w;

        Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(d, d);
        for (int i = 0; i < mu; ++i) {
            const Eigen::VectorXd& y = ys[static_cast<size_t>(order[static_cast<size_t>(i)])];
            rank_mu += weights(i) * y * y.transpose();
        }
        cov = (1.0 - c_1 - c_mu) * cov +
              c_1 * (p_c * p_c.transpose() + (hsig ? 0.0 : c_c * (2.0 - c_c)) * cov) +
              c_mu * rank_mu;
        sigma *= std::exp(c_sigma / d_sigma * (ps_norm / chi_n - 1.0));
    }
    return result;
}

CalibrationResult calibrate_cma(const DeviceParams& device, const LRUPulseParams& initial,
                                const CalibrationConfig& config) {
    initial.validate();
    check_dispersive_drive(device, initial.resonator_amp_rad_ns);
    // Search box: both drive frequencies near their nominal targets, bounded
    // amplitudes (the resonator bound keeps the photon number dispersive and
    // inside the Fock cutoff), and the delay inside the pulse.
    const double f_ef = device.omega_ef_ghz();
    const double f_re = device.omega_r_g_ghz - device.chi2_mhz * 1e-3;
    const double eps_max = 0.45 * device.kappa_rad_ns() *
                           std::sqrt(0.45 * device.fock_cutoff);
    CmaOptions opt;
    opt.lower = {f_ef - 0.03, f_re - 0.01, 0.0, 0.005, 0.0};
    opt.upper = {f_ef + 0.03, f_re + 0.01, 0.25, eps_max,
                 initial.pulse_len_ns - initial.rise_fall_ns - 1.0};
    opt.max_generations = config.max_generations;
    opt.seed = config.seed;
    opt.n_threads = config.n_threads;

    auto pulse_from = [&](const std::vector<double>& x) {
        LRUPulseParams p = initial;
        p.transmon_freq_ghz = x[0];
        p.resonator_freq_ghz = x[1];
        p.transmon_amp_rad_ns = x[2];
        p.resonator_amp_rad_ns = x[3];
        p.t_delay_ns = x[4];
        return p;
    };
    // Frozen trajectory seeds keep the cost deterministic in the pulse.
    auto cost = [&](const std::vector<double>& x) -> double {
        const LRUPulseParams pulse = pulse_from(x);
        TrajectoryOptions traj;
        traj.n_traj = config.n_traj;
        traj.dt_ns = config.dt_ns;
        traj.seed = Rng::stream(config.seed, 0xC0A7).next_u64();
        traj.n_threads = 1;
        try {
            const LruRun run = evolve_lru(device, pulse, traj);
            const ReadoutClassification cls =
                classify_readout(run, config.noise_scale, traj.seed ^ 0x5eed);
            const double removal = 1.0 - run.transfer[2][2];
            const double fid = assignment_fidelity(cls.assignment);
            return 1.0 - std::sqrt(std::max(removal, 0.0) * std::max(fid, 0.0));
        } catch (const std::exception&) {
            return 1.0;  // cutoff violations and degenerate points score worst
        }
    };

    const std::vector<double> x0 = {initial.transmon_freq_ghz, initial.resonator_freq_ghz,
                                    initial.transmon_amp_rad_ns, initial.resonator_amp_rad_ns,
                                    initial.t_delay_ns};
    CalibrationResult result;
    result.initial_cost = cost(x0);
    const CmaResult cma = cma_minimize(cost, x0, opt);
    result.pulse = pulse_from(cma.best_x);
    result.best_cost = std::min(cma.best_cost, result.initial_cost);
    if (result.initial_cost < cma.best_cost) {
        result.pulse = initial;
    }
    result.trace = cma.best_cost_per_generation;
    result.evaluations = cma.evaluations;
    return result;
}

}  // namespace lruqec::lru
