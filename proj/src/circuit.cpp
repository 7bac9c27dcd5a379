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

#include "lruqec/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace lruqec {

Instruction Instruction::prep_ground(int q) {
    Instruction op;
    op.kind = OpKind::prep_ground;
    op.qubits = {q};
    return op;
}

Instruction Instruction::rot_ge(int q, double axis_phi, double angle) {
    Instruction op;
    op.kind = OpKind::rot_ge;
    op.qubits = {q};
    op.axis_phi = axis_phi;
    op.angle = angle;
    return op;
}

Instruction Instruction::rot_ef(int q, double angle) {
    Instruction op;
    op.kind = OpKind::rot_ef;
    op.qubits = {q};
    op.angle = angle;
    return op;
}

Instruction Instruction::echo_x(std::vector<int> qubits) {
    Instruction op;
    op.kind = OpKind::echo_x;
    op.qubits = std::move(qubits);
    return op;
}

Instruction Instruction::cz_gate(int partner, int leaker, CZSpec spec) {
    Instruction op;
    op.kind = OpKind::cz;
    op.qubits = {partner, leaker};
    op.cz = spec;
    return op;
}

Instruction Instruction::measure_op(int q, MeasureMode mode, ReadoutLevels readout) {
    Instruction op;
    op.kind = OpKind::measure;
    op.qubits = {q};
    op.mode = mode;
    op.readout = readout;
    return op;
}

Instruction Instruction::idle_op(std::vector<int> qubits, double ns) {
    Instruction op;
    op.kind = OpKind::idle;
    op.qubits = std::move(qubits);
    op.idle_ns = ns;
    return op;
}

int Circuit::count_measurements() const {
    int n = 0;
    for (const auto& m : moments) {
        for (const auto& op : m.ops) {
            if (op.kind == OpKind::measure) {
                ++n;
            }
        }
    }
    return n;
}

int Circuit::count_instructions() const {
    int n = 0;
    for (const auto& m : moments) {
        n += static_cast<int>(m.ops.size());
    }
    return n;
}

namespace {

bool duration_class_compatible(OpKind a, OpKind b) {
    auto cls = [](OpKind k) {
        switch (k) {
            case OpKind::prep_ground:
                return 0;
            case OpKind::rot_ge:
            case OpKind::rot_ef:
                return 1;
            case OpKind::cz:
                return 2;
            case OpKind::measure:
            case OpKind::echo_x:
                return 3;
            case OpKind::idle:
                return 4;
        }
        return -1;
    };
    return cls(a) == cls(b);
}

}  // namespace

void Circuit::validate() const {
    if (n_qutrits <= 0) {
        throw std::invalid_argument("circuit must hold at least one qutrit");
    }
    for (const auto& m : moments) {
        if (m.ops.empty()) {
            throw std::invalid_argument("empty moment");
        }
        std::vector<int> used;
        for (const auto& op : m.ops) {
            if (!duration_class_compatible(op.kind, m.ops.front().kind)) {
                throw std::invalid_argument("moment mixes ops of different durations");
            }
            for (int q : op.qubits) {
                if (q < 0 || q >= n_qutrits) {
                    throw std::invalid_argument("qubit index out of range");
                }
                if (std::find(used.begin(), used.end(), q) != used.end()) {
                    throw std::invalid_argument("qubit used twice within a moment");
                }
                used.push_back(q);
            }
            if (!std::isfinite(op.angle) || !std::isfinite(op.axis_phi)) {
                throw std::invalid_argument("non-finite rotation parameter");
            }
            if (op.kind == OpKind::cz) {
                op.cz.validate();
                if (op.qubits.size() != 2 || op.qubits[0] == op.qubits[1]) {
                    throw std::invalid_argument("cz needs two distinct qubits");
                }
            }
            if (op.kind == OpKind::idle && !(op.idle_ns >= 0.0)) {
                throw std::invalid_argument("idle duration must be non-negative");
            }
        }
    }
}

double moment_duration_ns(const Moment& m, const GateDurations& d) {
    double ns = 0.0;
    for (const auto& op : m.ops) {
        switch (op.kind) {
            case OpKind::prep_ground:
                break;
            case OpKind::rot_ge:
            case OpKind::rot_ef:
                ns = std::max(ns, d.single_qubit_ns);
                break;
            case OpKind::cz:
                ns = std::max(ns, d.two_qubit_ns);
                break;
            case OpKind::echo_x:
            case OpKind::measure:
                ns = std::max(ns, d.measurement_ns);
                break;
            case OpKind::idle:
                ns = std::max(ns, op.idle_ns);
                break;
        }
    }
    return ns;
}

}  // namespace lruqec
