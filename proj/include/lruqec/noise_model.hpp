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

#include <stdexcept>
#include <vector>

#include "lruqec/stochastic_matrix.hpp"

namespace lruqec {

/// CZ gate error channel: leakage rate L1 and the phase of the
/// |11> <-> |02> exchange block. 4*l1 <= 1 keeps both block amplitudes real.
struct CZSpec {
    double l1 = 0.0;
    double phi = Rng::kPi / 2.0;

    void validate() const {
        if (!(l1 >= 0.0 && l1 <= 0.25)) {
            throw std::invalid_argument("CZ leakage rate l1 must lie in [0, 0.25]");
        }
        if (!std::isfinite(phi)) {
            throw std::invalid_argument("CZ phase must be finite");
        }
    }
};

/// Per-qubit decoherence and measurement parameters.
struct QubitNoise {
    double t1_us = 1e12;
    double t2_star_us = 1e12;
    AssignmentMatrix assignment_lru;
    AssignmentMatrix assignment_standard;
    TransferMatrix transfer_lru;
    TransferMatrix transfer_standard;
};

struct GateDurations {
    double single_qubit_ns = 20.0;
    double two_qubit_ns = 60.0;
    double measurement_ns = 700.0;
};

/// Noise description for a register of qutrits.
///
/// Qutrit collapse-operator convention used throughout the simulator:
///   sqrt(1/T1) |g><e|,  sqrt(2/T1) |e><f|,  sqrt(2*gamma_phi) diag(0,1,2)/sqrt(2)
/// with gamma_phi = 1/T2* - 1/(2*T1). See docs/model_notes.md.
struct NoiseModel {
    std::vector<QubitNoise> qubits;
    GateDurations durations;

    int n_qubits() const { return static_cast<int>(qubits.size()); }

    void validate() const {
        for (const auto& q : qubits) {
            if (!(q.t1_us > 0.0) || !(q.t2_star_us > 0.0)) {
                throw std::invalid_argument("T1 and T2* must be strictly positive");
            }
            if (q.t2_star_us > 2.0 * q.t1_us * (1.0 + 1e-12)) {
                throw std::invalid_argument("T2* must not exceed 2*T1");
            }
            q.assignment_lru.validate();
            q.assignment_standard.validate();
            q.transfer_lru.validate();
            q.transfer_standard.validate();
        }
        if (!(durations.single_qubit_ns > 0.0 && durations.two_qubit_ns > 0.0 &&
              durations.measurement_ns > 0.0)) {
            throw std::invalid_argument("gate durations must be strictly positive");
        }
    }

    // Jump rates in 1/ns.
    double gamma1(int q) const { return 1.0 / (qubits[q].t1_us * 1e3); }
    double gamma_ef(int q) const { return 2.0 / (qubits[q].t1_us * 1e3); }
    double gamma_phi(int q) const {
        const double g = 1.0 / (qubits[q].t2_star_us * 1e3) - 0.5 / (qubits[q].t1_us * 1e3);
        return g > 0.0 ? g : 0.0;
    }

    /// Noise-free model: effectively infinite coherence times, ideal readout.
    static NoiseModel ideal(int n);

    /// Single-transmon LRU calibration values (readout matrices consistent
    /// with a 98.4% removal fraction and 99.2%/98.2% two/three-level average
    /// assignment fidelities).
    static NoiseModel lru_calibration_defaults(int n);

    /// Repetition-5 memory experiment: qubits ordered [D7 D8 D9 Z3 Z4].
    static NoiseModel memory_defaults();

    /// Stability-7 experiment: qubits ordered [D4 D5 D6 Z1 Z2 Z3 Z4].
    static NoiseModel stability_defaults();
};

bool operator==(const StochasticMatrix3& a, const StochasticMatrix3& b);
bool operator==(const QubitNoise& a, const QubitNoise& b);
bool operator==(const NoiseModel& a, const NoiseModel& b);

}  // namespace lruqec
