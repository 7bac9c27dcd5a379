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

#include "lruqec/lru/trajectory.hpp"
#include "lruqec/stochastic_matrix.hpp"

namespace lruqec::lru {

/// Classifier noise calibrated once against the device's standard-readout
/// g-e assignment fidelity (98.6%) at the default pulse.
inline constexpr double kDefaultReadoutNoiseScale = 123.2;

struct ReadoutClassification {
    AssignmentMatrix assignment;
    std::array<Complex, 3> class_means{};
    double noise_scale = 0.0;
};

/// Single-shot classification of the matched-filter signals: white Gaussian
/// noise of scale `noise_scale` (per quadrature) is added to every
/// trajectory's integrated field, and shots are assigned to the nearest of
/// the three class means in the I-Q plane.
ReadoutClassification classify_readout(const LruRun& run, double noise_scale, uint64_t seed);

/// Average three-level assignment fidelity (mean of the diagonal).
double assignment_fidelity(const AssignmentMatrix& m);

/// Two-level g-e assignment fidelity with outcome 2 mapped to 1.
double ge_fidelity(const AssignmentMatrix& m);

/// Bisect the noise scale so the standard measurement's g-e fidelity matches
/// `target` (used once to pin the classifier noise against the device value).
double calibrate_noise_scale(const LruRun& standard_run, double target_ge_fidelity,
                             uint64_t seed);

}  // namespace lruqec::lru
