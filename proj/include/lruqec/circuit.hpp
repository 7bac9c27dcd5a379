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
#include <stdexcept>
#include <string>
#include <vector>

#include "lruqec/noise_model.hpp"

namespace lruqec {

enum class OpKind : uint8_t {
    prep_ground,  // hard reset of one qutrit to |g>
    rot_ge,       // pi/2-style rotation in the {g, e} subspace about an xy-plane axis
    rot_ef,       // x-axis rotation in the {e, f} subspace
    echo_x,       // X on each listed qubit, applied at the half-way point of a measure window
    cz,           // CZ with the |11> <-> |02> leakage block on the designated qubit
    measure,      // projective three-outcome measurement + assignment + transfer
    idle,         // explicit wait
};

enum class MeasureMode : uint8_t { standard, lru };
enum class ReadoutLevels : uint8_t { two_level, three_level };

struct Instruction {
    OpKind kind = OpKind::idle;
    std::vector<int> qubits;

    // rot_ge: axis at azimuth axis_phi in the xy plane (0 = X, pi/2 = Y).
    // rot_ef: rotation about x within {e, f}.
    double angle = 0.0;
    double axis_phi = 0.0;

    // cz: qubits = {partner, leaker}; the leaker is the higher-frequency
    // transmon of the pair and is the one that ends in |f> on a leakage event.
    CZSpec cz;

    // measure
    MeasureMode mode = MeasureMode::standard;
    ReadoutLevels readout = ReadoutLevels::three_level;

    // idle
    double idle_ns = 0.0;

    static Instruction prep_ground(int q);
    static Instruction rot_ge(int q, double axis_phi, double angle);
    static Instruction rot_ef(int q, double angle);
    static Instruction echo_x(std::vector<int> qubits);
    static Instruction cz_gate(int partner, int leaker, CZSpec spec);
    static Instruction measure_op(int q, MeasureMode mode, ReadoutLevels readout);
    static Instruction idle_op(std::vector<int> qubits, double ns);
};

/// Instructions in a moment execute simultaneously; every qubit of the
/// register decoheres for the moment duration (measured qubits excepted, see
/// the simulator). The builders only emit moments of homogeneous duration.
struct Moment {
    std::vector<Instruction> ops;
};

struct Circuit {
    int n_qutrits = 0;
    std::vector<Moment> moments;

    void append(Instruction op) { moments.push_back(Moment{{std::move(op)}}); }
    void append(Moment m) { moments.push_back(std::move(m)); }

    int count_measurements() const;
    int count_instructions() const;

    /// Throws std::invalid_argument on out-of-range qubits, non-finite
    /// angles, or a moment mixing incompatible op kinds.
    void validate() const;
};

/// Moment wall-clock duration under the given gate durations.
double moment_duration_ns(const Moment& m, const GateDurations& d);

}  // namespace lruqec
