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
#include <vector>

#include "lruqec/noise_model.hpp"

namespace lruqec::qec {

struct L1Estimate {
    double l1_tilde = 0.0;  // M / 2
    double sigma = 0.0;     // statistical error of l1_tilde
    double offset = 0.0;    // fitted oscillation offset of the e-return population
    double amplitude = 0.0;
};

/// Conditional-oscillation leakage estimator on one pair. The leaking
/// (higher-frequency) qubit is put in superposition, its partner in |e>, a CZ
/// with leakage rate l1_true is applied, and the recovery-pulse axis is swept
/// over n_points covering a full period. The e-return population of the
/// leaking qubit oscillates around an offset c; the missing fraction is
/// M = 1 - 2c and the estimate is M / 2, which equals l1 without decoherence
/// and upper-bounds it otherwise.
///
/// Readout is idealized here (the experimental counterpart corrects readout
/// errors before extracting M); `pair_noise` supplies T1/T2* of
/// [partner, leaker] when with_decoherence is set.
L1Estimate estimate_l1_tilde(double l1_true, const NoiseModel& pair_noise, bool with_decoherence,
                             int n_points, int shots, uint64_t seed);

/// Set P(f|e) = p in the population transfer matrices (both measurement
/// modes) of the listed qubits, renormalizing each edited row.
NoiseModel inject_measurement_leakage(const NoiseModel& noise, double p,
                                      const std::vector<int>& qubits);

/// Set the leakage removal fraction 1 - P(f|f) of the LRU transfer matrix,
/// which adjusts P(e|f) accordingly.
NoiseModel set_removal_fraction(const NoiseModel& noise, double fraction,
                                const std::vector<int>& qubits);

/// Set the e-f assignment infidelity: P(1|f) = P(2|e) = x in both assignment
/// matrices, with P(2|f) and P(1|e) absorbing the change.
NoiseModel set_ef_assignment_infidelity(const NoiseModel& noise, double infidelity,
                                        const std::vector<int>& qubits);

}  // namespace lruqec::qec
