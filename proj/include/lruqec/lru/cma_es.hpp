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

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lruqec/lru/readout.hpp"

namespace lruqec::lru {

struct CmaOptions {
    int lambda = 0;  // 0: 4 + floor(3 ln d)
    int max_generations = 50;
    double sigma0 = 0.3;               // initial step size, in box-normalized units
    std::vector<double> lower, upper;  // box constraints (candidates are projected)
    uint64_t seed = 1;
    int n_threads = 1;
};

struct CmaResult {
    std::vector<double> best_x;
    double best_cost = 0.0;
    std::vector<double> best_cost_per_generation;  // best-so-far, non-increasing
    int evaluations = 0;
};

/// Minimal (mu/mu_w, lambda) covariance-matrix-adaptation evolution strategy
/// with the standard weight, step-size and rank-one/rank-mu update rules.
/// The search runs in box-normalized coordinates; candidates are projected
/// onto the box before evaluation. Deterministic for a fixed seed; candidate
/// evaluations may run in parallel, aggregation order is fixed.
CmaResult cma_minimize(const std::function<double(const std::vector<double>&)>& cost,
                       const std::vector<double>& x0, const CmaOptions& options);

struct CalibrationResult {
    LRUPulseParams pulse;
    double initial_cost = 0.0;
    double best_cost = 0.0;
    std::vector<double> trace;  // best-so-far cost per generation
    int evaluations = 0;
};

struct CalibrationConfig {
    int max_generations = 25;
    int n_traj = 48;
    double noise_scale = 0.0;
    double dt_ns = 0.25;
    uint64_t seed = 1;
    int n_threads = 1;
};

/// Optimize {both drive frequencies, both drive amplitudes, t_delay} against
/// the cost 1 - sqrt(assignment_fidelity * removal_fraction). Trajectory
/// seeds are frozen so the cost is a deterministic function of the pulse.
CalibrationResult calibrate_cma(const DeviceParams& device, const LRUPulseParams& initial,
                                const CalibrationConfig& config);

}  // namespace lruqec::lru
