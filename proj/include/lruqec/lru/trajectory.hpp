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

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "lruqec/lru/device.hpp"

namespace lruqec::lru {

using Complex = std::complex<double>;

/// Quantum-trajectory run of the driven dispersive model, conditioned on the
/// initial transmon level. Everything is averaged over trajectories except
/// `signals`, which keeps the per-trajectory matched-filter integral of
/// <a(t)> over the drive window for single-shot classification.
struct LruRun {
    // transfer[s][s'] = P(final transmon level s' | initial level s).
    std::array<std::array<double, 3>, 3> transfer{};
    std::vector<double> t_grid_ns;
    std::array<std::vector<Complex>, 3> mean_field;                 // <a>(t) per initial level
    std::array<std::vector<std::array<double, 3>>, 3> mean_pops;    // level populations vs t
    std::array<std::vector<double>, 3> mean_photons;                // <n>(t)
    std::array<std::vector<Complex>, 3> signals;                    // per trajectory
    double top_fock_max = 0.0;
    int n_traj = 0;
};

struct TrajectoryOptions {
    int n_traj = 128;
    double dt_ns = 0.25;
    double sample_dt_ns = 2.0;
    double cutoff_tolerance = 1e-3;  // max tolerated top-Fock population
    uint64_t seed = 1;
    int n_threads = 1;
};

/// Integrate the rotating-frame Hamiltonian
///   H = sum_s delta_r(s) a^dag a |s><s| + delta_q |f><f|
///     + eps_r(t) (a + a^dag) + Omega(t)/2 (|e><f| + |f><e|)
/// with collapse operators sqrt(kappa) a and the transmon ladder set
/// (sqrt(1/T1)|g><e|, sqrt(2/T1)|e><f|, sqrt(gamma_phi) diag(0,1,2)),
/// via the Monte-Carlo wavefunction method (RK4 steps, norm-threshold jump
/// detection with bisected jump times). Throws when the top Fock state
/// accumulates more than cutoff_tolerance population or the integrator
/// produces a non-finite state.
LruRun evolve_lru(const DeviceParams& device, const LRUPulseParams& pulse,
                  const TrajectoryOptions& options);

/// Single-level variant (initial transmon level fixed); used by tests.
LruRun evolve_lru_level(const DeviceParams& device, const LRUPulseParams& pulse, int initial_level,
                        const TrajectoryOptions& options);

}  // namespace lruqec::lru
