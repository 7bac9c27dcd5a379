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

#include "lruqec/noise_model.hpp"

namespace lruqec {

namespace {

using Rows = std::array<std::array<double, 3>, 3>;

QubitNoise make_qubit(double t1_us, double t2_star_us, const Rows& assign_lru,
                      const Rows& assign_std, const Rows& transfer_lru, const Rows& transfer_std) {
    QubitNoise q;
    q.t1_us = t1_us;
    q.t2_star_us = t2_star_us;
    q.assignment_lru = AssignmentMatrix::from_rows(assign_lru);
    q.assignment_standard = AssignmentMatrix::from_rows(assign_std);
    q.transfer_lru = TransferMatrix::from_rows(transfer_lru);
    q.transfer_standard = TransferMatrix::from_rows(transfer_std);
    return q;
}

}  // namespace

NoiseModel NoiseModel::ideal(int n) {
    NoiseModel nm;
    nm.qubits.assign(static_cast<size_t>(n), QubitNoise{});
    nm.validate();
    return nm;
}

NoiseModel NoiseModel::lru_calibration_defaults(int n) {
    const Rows assign_lru = {{{0.994, 0.005, 0.001}, {0.010, 0.985, 0.005}, {0.006, 0.027, 0.967}}};
    const Rows assign_std = {{{0.994, 0.005, 0.001}, {0.010, 0.985, 0.005}, {0.006, 0.024, 0.970}}};
    const Rows transfer_lru = {
        {{0.998, 0.002, 0.000}, {0.044, 0.956, 0.000}, {0.000, 0.984, 0.016}}};
    const Rows transfer_std = {
        {{0.998, 0.002, 0.000}, {0.044, 0.956, 0.000}, {0.003, 0.084, 0.913}}};
    NoiseModel nm;
    nm.qubits.assign(static_cast<size_t>(n),
                     make_qubit(11.0, 13.0, assign_lru, assign_std, transfer_lru, transfer_std));
    nm.validate();
    return nm;
}

NoiseModel NoiseModel::memory_defaults() {
    // Measure-qubit readout: 98.6% g-e assignment fidelity, 93%/94% f
    // assignment fidelity with/without LRU, 95% leakage removal fraction.
    const Rows meas_assign_lru = {
        {{0.986, 0.013, 0.001}, {0.012, 0.986, 0.002}, {0.010, 0.060, 0.930}}};
    const Rows meas_assign_std = {
        {{0.986, 0.013, 0.001}, {0.012, 0.986, 0.002}, {0.010, 0.050, 0.940}}};
    const Rows meas_transfer_lru = {
        {{0.997, 0.003, 0.000}, {0.022, 0.978, 0.000}, {0.005, 0.945, 0.050}}};
    const Rows meas_transfer_std = {
        {{0.997, 0.003, 0.000}, {0.022, 0.978, 0.000}, {0.001, 0.042, 0.957}}};
    // Data qubits only see a final two-level readout; reuse the g-e block.
    const Rows data_assign = {
        {{0.986, 0.013, 0.001}, {0.012, 0.986, 0.002}, {0.010, 0.050, 0.940}}};
    const Rows data_transfer = {
        {{0.999, 0.001, 0.000}, {0.034, 0.966, 0.000}, {0.001, 0.066, 0.933}}};

    NoiseModel nm;
    const QubitNoise data =
        make_qubit(20.0, 20.0, data_assign, data_assign, data_transfer, data_transfer);
    const QubitNoise meas = make_qubit(32.0, 22.0, meas_assign_lru, meas_assign_std,
                                       meas_transfer_lru, meas_transfer_std);
    nm.qubits = {data, data, data, meas, meas};
    nm.validate();
    return nm;
}

NoiseModel NoiseModel::stability_defaults() {
    // 98.3% g-e assignment fidelity and a 94.2% removal fraction.
    const Rows meas_assign_lru = {
        {{0.983, 0.016, 0.001}, {0.015, 0.983, 0.002}, {0.010, 0.060, 0.930}}};
    const Rows meas_assign_std = {
        {{0.983, 0.016, 0.001}, {0.015, 0.983, 0.002}, {0.010, 0.050, 0.940}}};
    const Rows meas_transfer_lru = {
        {{0.996, 0.004, 0.000}, {0.043, 0.957, 0.000}, {0.005, 0.937, 0.058}}};
    const Rows meas_transfer_std = {
        {{0.996, 0.004, 0.000}, {0.043, 0.957, 0.000}, {0.001, 0.083, 0.916}}};
    const Rows data_assign = {
        {{0.983, 0.016, 0.001}, {0.015, 0.983, 0.002}, {0.010, 0.050, 0.940}}};
    const Rows data_transfer = {
        {{0.998, 0.002, 0.000}, {0.052, 0.948, 0.000}, {0.001, 0.100, 0.899}}};

    NoiseModel nm;
    const QubitNoise data =
        make_qubit(13.0, 13.0, data_assign, data_assign, data_transfer, data_transfer);
    const QubitNoise meas = make_qubit(16.0, 23.0, meas_assign_lru, meas_assign_std,
                                       meas_transfer_lru, meas_transfer_std);
    nm.qubits = {data, data, data, meas, meas, meas, meas};
    nm.validate();
    return nm;
}

bool operator==(const StochasticMatrix3& a, const StochasticMatrix3& b) {
    for (int s = 0; s < 3; ++s) {
        for (int o = 0; o < 3; ++o) {
            if (a(s, o) != b(s, o)) {
                return false;
            }
        }
    }
    return true;
}

bool operator==(const QubitNoise& a, const QubitNoise& b) {
    return a.t1_us == b.t1_us && a.t2_star_us == b.t2_star_us &&
           a.assignment_lru == b.assignment_lru && a.assignment_standard == b.assignment_standard &&
           a.transfer_lru == b.transfer_lru && a.transfer_standard == b.transfer_standard;
}

bool operator==(const NoiseModel& a, const NoiseModel& b) {
    if (a.qubits.size() != b.qubits.size()) {
        return false;
    }
    for (size_t i = 0; i < a.qubits.size(); ++i) {
        if (!(a.qubits[i] == b.qubits[i])) {
            return false;
        }
    }
    return a.durations.single_qubit_ns == b.durations.single_qubit_ns &&
           a.durations.two_qubit_ns == b.durations.two_qubit_ns &&
           a.durations.measurement_ns == b.durations.measurement_ns;
}

}  // namespace lruqec
