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

#include "lruqec/qec/experiments.hpp"

#include <cmath>
#include <numeric>

namespace lruqec::qec {

namespace {

constexpr double kHalfPi = Rng::kPi / 2.0;

uint8_t popcount3(uint8_t bits) {
    return static_cast<uint8_t>(((bits >> 0) & 1) + ((bits >> 1) & 1) + ((bits >> 2) & 1));
}

}  // namespace

void MemorySpec::validate() const {
    if (rounds < 1) {
        throw std::invalid_argument("memory experiment needs at least one round");
    }
    if (q_d > 7) {
        throw std::invalid_argument("q_d is a 3-bit string");
    }
    if (static_cast<int>(flips.size()) != rounds) {
        throw std::invalid_argument("flip vector length must equal the round count");
    }
    int tail = 0;
    for (size_t i = 1; i < flips.size(); ++i) {
        tail ^= flips[i] & 1;
    }
    if ((flips[0] & 1) != tail) {
        throw std::invalid_argument("flip vector violates the parity constraint");
    }
    CZSpec{l1}.validate();
    if (rx12_theta < 0.0 || rx12_theta > Rng::kPi) {
        throw std::invalid_argument("rx12 angle must lie in [0, pi]");
    }
}

void StabilitySpec::validate() const {
    if (rounds < 3) {
        throw std::invalid_argument("stability experiment needs at least three rounds");
    }
    if (q_a > 15) {
        throw std::invalid_argument("q_a is a 4-bit string");
    }
    CZSpec{l1}.validate();
    if (rx12_theta < 0.0 || rx12_theta > Rng::kPi) {
        throw std::invalid_argument("rx12 angle must lie in [0, pi]");
    }
}

Circuit build_memory_circuit(const MemorySpec& spec) {
    spec.validate();
    using L = MemoryLayout;
    Circuit c;
    c.n_qutrits = L::n_qubits;
    const MeasureMode mode = spec.lru_on ? MeasureMode::lru : MeasureMode::standard;

    // Data initialization.
    {
        Moment init;
        for (int i = 0; i < L::n_data; ++i) {
            if ((spec.q_d >> i) & 1) {
                init.ops.push_back(Instruction::rot_ge(i, 0.0, Rng::kPi));
            }
        }
        if (!init.ops.empty()) {
            c.append(std::move(init));
        }
    }

    for (int r = 1; r <= spec.rounds; ++r) {
        // Measure-qubit basis preparation; the round's random logical flip
        // executes concurrently in the same single-qubit layer.
        Moment prep;
        prep.ops.push_back(Instruction::rot_ge(L::kZ3, kHalfPi, kHalfPi));
        prep.ops.push_back(Instruction::rot_ge(L::kZ4, kHalfPi, kHalfPi));
        if (spec.flips[static_cast<size_t>(r - 1)] & 1) {
            for (int q : L::data_qubits()) {
                prep.ops.push_back(Instruction::rot_ge(q, 0.0, Rng::kPi));
            }
        }
        c.append(std::move(prep));

        const CZSpec cz{spec.l1, kHalfPi};
        Moment layer_a;
        layer_a.ops.push_back(Instruction::cz_gate(L::kD7, L::kZ3, cz));
        layer_a.ops.push_back(Instruction::cz_gate(L::kD8, L::kZ4, cz));
        c.append(std::move(layer_a));
        Moment layer_b;
        layer_b.ops.push_back(Instruction::cz_gate(L::kD8, L::kZ3, cz));
        layer_b.ops.push_back(Instruction::cz_gate(L::kD9, L::kZ4, cz));
        c.append(std::move(layer_b));

        Moment unprep;
        unprep.ops.push_back(Instruction::rot_ge(L::kZ3, kHalfPi, -kHalfPi));
        unprep.ops.push_back(Instruction::rot_ge(L::kZ4, kHalfPi, -kHalfPi));
        c.append(std::move(unprep));

        Moment window;
        window.ops.push_back(
            Instruction::measure_op(L::kZ3, mode, ReadoutLevels::three_level));
        window.ops.push_back(
            Instruction::measure_op(L::kZ4, mode, ReadoutLevels::three_level));
        if (r < spec.rounds) {
            window.ops.push_back(Instruction::echo_x(L::data_qubits()));
        } else {
            for (int q : L::data_qubits()) {
                window.ops.push_back(
                    Instruction::measure_op(q, MeasureMode::standard, ReadoutLevels::two_level));
            }
        }
        c.append(std::move(window));
    }

    if (spec.rx12_theta != 0.0) {
        return inject_rx12(c, spec.rx12_theta, L::measure_qubits());
    }
    return c;
}

int memory_instruction_count(const MemorySpec& spec) {
    spec.validate();
    const int flip_total = std::accumulate(spec.flips.begin(), spec.flips.end(), 0);
    int count = popcount3(spec.q_d) + 8 * spec.rounds + 3 * flip_total + 3 * (spec.rounds - 1) + 5;
    if (spec.rx12_theta != 0.0) {
        count += 2 * spec.rounds;
    }
    return count;
}

Circuit build_stability_circuit(const StabilitySpec& spec) {
    spec.validate();
    using L = StabilityLayout;
    Circuit c;
    c.n_qutrits = L::n_qubits;
    const MeasureMode mode = spec.lru_on ? MeasureMode::lru : MeasureMode::standard;

    // Initialization: measure qubits to q_a, data qubits to |+>.
    {
        Moment init;
        for (int a = 0; a < L::n_measure; ++a) {
            if ((spec.q_a >> a) & 1) {
                init.ops.push_back(Instruction::rot_ge(L::measure_qubits()[a], 0.0, Rng::kPi));
            }
        }
        for (int q : L::data_qubits()) {
            init.ops.push_back(Instruction::rot_ge(q, kHalfPi, kHalfPi));
        }
        c.append(std::move(init));
    }

    const CZSpec leaky{spec.l1, kHalfPi};
    const CZSpec clean{0.0, kHalfPi};

    for (int r = 1; r <= spec.rounds; ++r) {
        Moment prep;
        for (int q : L::measure_qubits()) {
            prep.ops.push_back(Instruction::rot_ge(q, kHalfPi, kHalfPi));
        }
        c.append(std::move(prep));

        // Odd chain edges, then even ones. D5-Z2 and D5-Z3 stay leak-free.
        Moment layer_a;
        layer_a.ops.push_back(Instruction::cz_gate(L::kD4, L::kZ1, leaky));
        layer_a.ops.push_back(Instruction::cz_gate(L::kD5, L::kZ2, clean));
        layer_a.ops.push_back(Instruction::cz_gate(L::kD6, L::kZ3, leaky));
        c.append(std::move(layer_a));
        Moment layer_b;
        layer_b.ops.push_back(Instruction::cz_gate(L::kD4, L::kZ2, leaky));
        layer_b.ops.push_back(Instruction::cz_gate(L::kD5, L::kZ3, clean));
        layer_b.ops.push_back(Instruction::cz_gate(L::kD6, L::kZ4, leaky));
        c.append(std::move(layer_b));

        Moment unprep;
        for (int q : L::measure_qubits()) {
            unprep.ops.push_back(Instruction::rot_ge(q, kHalfPi, -kHalfPi));
        }
        c.append(std::move(unprep));

        Moment window;
        for (int q : L::measure_qubits()) {
            window.ops.push_back(Instruction::measure_op(q, mode, ReadoutLevels::three_level));
        }
        if (r < spec.rounds) {
            window.ops.push_back(Instruction::echo_x(L::data_qubits()));
        } else {
            for (int q : L::data_qubits()) {
                window.ops.push_back(
                    Instruction::measure_op(q, MeasureMode::standard, ReadoutLevels::two_level));
            }
        }
        c.append(std::move(window));
    }

    if (spec.rx12_theta != 0.0) {
        return inject_rx12(c, spec.rx12_theta, L::measure_qubits());
    }
    return c;
}

int stability_instruction_count(const StabilitySpec& spec) {
    spec.validate();
    int count = 0;
    for (int a = 0; a < StabilityLayout::n_measure; ++a) {
        count += (spec.q_a >> a) & 1;
    }
    count += 3;                    // data |+> preparations
    count += 19 * spec.rounds;     // 4 prep + 6 cz + 4 unprep + 4 measure + 1 echo
    count += 2;                    // last round: echo replaced by 3 data measurements
    if (spec.rx12_theta != 0.0) {
        count += 4 * spec.rounds;
    }
    return count;
}

Circuit inject_rx12(const Circuit& circuit, double theta, const std::vector<int>& measure_qubits) {
    if (theta < 0.0 || theta > Rng::kPi) {
        throw std::invalid_argument("rx12 angle must lie in [0, pi]");
    }
    Circuit out;
    out.n_qutrits = circuit.n_qutrits;
    for (const auto& m : circuit.moments) {
        out.moments.push_back(m);
        int prepped = 0;
        for (const auto& op : m.ops) {
            if (op.kind == OpKind::rot_ge && op.angle > 0.0 &&
                std::abs(op.angle - kHalfPi) < 1e-12) {
                for (int q : measure_qubits) {
                    if (op.qubits[0] == q) {
                        ++prepped;
                    }
                }
            }
        }
        if (prepped == static_cast<int>(measure_qubits.size()) && theta != 0.0) {
            Moment inj;
            for (int q : measure_qubits) {
                inj.ops.push_back(Instruction::rot_ef(q, theta));
            }
            out.moments.push_back(std::move(inj));
        }
    }
    return out;
}

}  // namespace lruqec::qec
