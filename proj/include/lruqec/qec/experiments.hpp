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

#include "lruqec/circuit.hpp"

namespace lruqec::qec {

/// Repetition-5 memory experiment: bit-flip distance-3 repetition code on the
/// chain D7 - Z3 - D8 - Z4 - D9. Register order [D7 D8 D9 Z3 Z4].
struct MemoryLayout {
    static constexpr int kD7 = 0, kD8 = 1, kD9 = 2, kZ3 = 3, kZ4 = 4;
    static constexpr int n_qubits = 5;
    static constexpr int n_data = 3;
    static constexpr int n_measure = 2;
    static std::vector<int> data_qubits() { return {kD7, kD8, kD9}; }
    static std::vector<int> measure_qubits() { return {kZ3, kZ4}; }
};

/// Stability-7 experiment: 1D chain of four Z-type parity checks,
/// Z1 - D4 - Z2 - D5 - Z3 - D6 - Z4. Register order [D4 D5 D6 Z1 Z2 Z3 Z4].
/// The two end checks (Z1, Z4) have weight 1; their product with the two
/// weight-2 checks is the identity, which defines the logical observable.
struct StabilityLayout {
    static constexpr int kD4 = 0, kD5 = 1, kD6 = 2;
    static constexpr int kZ1 = 3, kZ2 = 4, kZ3 = 5, kZ4 = 6;
    static constexpr int n_qubits = 7;
    static constexpr int n_data = 3;
    static constexpr int n_measure = 4;
    static std::vector<int> data_qubits() { return {kD4, kD5, kD6}; }
    static std::vector<int> measure_qubits() { return {kZ1, kZ2, kZ3, kZ4}; }
};

struct MemorySpec {
    uint8_t q_d = 0;             // 3-bit initial data bitstring, bit i = data qubit i
    int rounds = 1;              // R >= 1
    std::vector<uint8_t> flips;  // length R; flips[0] = sum of the rest mod 2
    bool lru_on = true;
    double l1 = 0.0;
    double rx12_theta = 0.0;  // per-round leakage injection on measure qubits

    void validate() const;
};

struct StabilitySpec {
    uint8_t q_a = 0;  // 4-bit initial measure bitstring, bit a = measure qubit a
    int rounds = 3;   // R >= 3; below that there is no logical protection
    bool lru_on = true;
    double l1 = 0.0;
    double rx12_theta = 0.0;

    void validate() const;
};

/// Build the Repetition-5 circuit: optional data-qubit flips concurrent with
/// the measure-qubit basis preparation, two CZ layers per round, echo X on
/// data qubits at the half-way point of every measure window except the last
/// round, where the echo is replaced by the final two-level data readout.
/// Measure qubits are never reset and are the leaking side of every CZ.
Circuit build_memory_circuit(const MemorySpec& spec);

/// Instruction count of build_memory_circuit (structural determinism check):
/// popcount(q_d) + 8R + 3*sum(flips) + 3(R-1) + 5 + [theta != 0] * 2R.
int memory_instruction_count(const MemorySpec& spec);

/// Build the Stability-7 circuit: measure qubits initialized to q_a, data
/// qubits to |+>, two CZ layers per round (odd chain edges then even ones).
/// Leakage is injected on every CZ except D5-Z2 and D5-Z3, whose measure
/// qubits are not the higher-frequency member of the pair. Final data
/// measurements are present but unused for decoding.
Circuit build_stability_circuit(const StabilitySpec& spec);

int stability_instruction_count(const StabilitySpec& spec);

/// Insert a RotEF(theta) moment on `measure_qubits` right after every moment
/// that applies a +pi/2 ge-rotation to all of them (the per-round
/// superposition preparation). Leakage per gate is sin^2(theta/2)/4.
Circuit inject_rx12(const Circuit& circuit, double theta, const std::vector<int>& measure_qubits);

}  // namespace lruqec::qec
