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
#include <utility>
#include <vector>

#include "lruqec/qec/experiments.hpp"
#include "lruqec/simulator.hpp"

namespace lruqec::qec {

enum class ExperimentKind : uint8_t { memory, stability };

/// One decoded shot of a memory or stability circuit.
///
/// Known deterministic Pauli-frame updates are already folded in:
///  - memory: the final data bits are flipped when the (R-1) echo X gates
///    amount to a net flip; parity checks are weight 2, so m needs no fix-up.
///  - stability: the weight-1 end checks (Z1, Z4) see one echo per round, so
///    m is corrected by r(r-1)/2 mod 2 at round r for those two checks.
/// Random logical flips are never corrected for; their sum is constrained to
/// zero, and per round they act on both qubits of every check.
struct ShotRecord {
    ExperimentKind kind = ExperimentKind::memory;
    int rounds = 0;
    int n_measure = 0;

    std::vector<uint8_t> m3;         // [round][a] ternary outcomes as reported
    std::vector<uint8_t> m;          // [round][a] binary, frame-corrected
    std::vector<uint8_t> flags;      // [round][a] leakage flags, m3 == 2
    std::vector<uint8_t> detectors;  // memory: rounds 1..R+1; stability: rounds 2..R
    std::vector<uint8_t> final_data;    // 3 data bits (memory: frame-corrected)
    std::vector<uint8_t> stabilizers;   // memory: parity of adjacent final data bits
    uint8_t z_raw = 0;
    uint8_t z_ideal = 0;

    // Circuit metadata.
    uint32_t spec_id = 0;   // index into the generating spec grid
    uint8_t init_bits = 0;  // q_d (memory) or q_a (stability)
    std::vector<uint8_t> flips;
    uint8_t lru_on = 0;
    double l1 = 0.0;

    uint8_t m3_at(int round1, int a) const {
        return m3[static_cast<size_t>((round1 - 1) * n_measure + a)];
    }
    uint8_t m_at(int round1, int a) const {
        return m[static_cast<size_t>((round1 - 1) * n_measure + a)];
    }
    uint8_t flag_at(int round1, int a) const {
        return flags[static_cast<size_t>((round1 - 1) * n_measure + a)];
    }
    int detector_rounds() const { return kind == ExperimentKind::memory ? rounds + 1 : rounds - 1; }
    int last_odd_round() const { return rounds % 2 == 1 ? rounds : rounds - 1; }
};

/// Detectors from frame-corrected binary outcomes. Memory (A = 2 checks):
/// d_1 = m_1, d_2 = m_2, d_r = m_r xor m_{r-2}, d_{R+1} = s xor m_R xor
/// m_{R-1}. Stability (A = 4): d_2 = m_2, d_r = m_r xor m_{r-2}; round 1
/// carries no detector.
std::vector<uint8_t> compute_detectors(const std::vector<uint8_t>& m,
                                       const std::vector<uint8_t>& stabilizers, int rounds,
                                       int n_measure, ExperimentKind kind);

std::vector<uint8_t> compute_detectors(const ShotRecord& record, ExperimentKind kind);

/// (z_raw, z_ideal). Memory: z_raw is the parity of the (frame-corrected)
/// final data bits and z_ideal the parity of q_d xor the flip parity.
/// Stability: z_raw is the parity of the outcomes at the last odd round and
/// z_ideal comes from a noise-free reference run of the same circuit shape.
std::pair<uint8_t, uint8_t> logical_observables(const ShotRecord& record, ExperimentKind kind);

/// Noise-free reference value of the stability logical observable.
uint8_t stability_reference_z(uint8_t q_a, int rounds);

/// Assemble a ShotRecord from the raw simulator outcomes of the matching
/// builder circuit (frame corrections applied here).
ShotRecord record_from_memory_shot(const MemorySpec& spec, const RawShot& raw);
ShotRecord record_from_stability_shot(const StabilitySpec& spec, const RawShot& raw,
                                      uint8_t z_ideal);

}  // namespace lruqec::qec
