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

#include "lruqec/qec/leakage.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "lruqec/simulator.hpp"

namespace lruqec::qec {

L1Estimate estimate_l1_tilde(double l1_true, const NoiseModel& pair_noise, bool with_decoherence,
                             int n_points, int shots, uint64_t seed) {
    if (shots < 100) {
        throw std::invalid_argument("conditional oscillation needs at least 100 shots per point");
    }
    if (n_points < 5) {
        throw std::invalid_argument("need at least 5 phase points");
    }
    if (pair_noise.n_qubits() != 2) {
        throw std::invalid_argument("pair_noise must describe exactly two qubits");
    }
    CZSpec{l1_true}.validate();

    // Idealized readout; optional decoherence from the device T1/T2*.
    NoiseModel noise = NoiseModel::ideal(2);
    if (with_decoherence) {
        for (int q = 0; q < 2; ++q) {
            noise.qubits[static_cast<size_t>(q)].t1_us = pair_noise.qubits[static_cast<size_t>(q)].t1_us;
            noise.qubits[static_cast<size_t>(q)].t2_star_us =
                pair_noise.qubits[static_cast<size_t>(q)].t2_star_us;
        }
    }
    noise.durations = pair_noise.durations;

    // The leaking (higher-frequency) qubit sits in |e>; its partner carries
    // the swept Ramsey sequence whose recovery-pulse axis advances over a
    // full period. The leaker's e-return population is flat in the sweep
    // phase up to leakage: its fitted offset c gives M = 1 - c.
    constexpr int kPartner = 0;
    constexpr int kLeaker = 1;
    std::vector<double> phase(static_cast<size_t>(n_points));
    std::vector<double> p_e(static_cast<size_t>(n_points));
    std::vector<double> var(static_cast<size_t>(n_points));
    for (int k = 0; k < n_points; ++k) {
        const double phi = 2.0 * Rng::kPi * k / (n_points - 1);
        phase[static_cast<size_t>(k)] = phi;

        Circuit c;
        c.n_qutrits = 2;
        Moment prep;
        prep.ops.push_back(Instruction::rot_ge(kPartner, Rng::kPi / 2.0, Rng::kPi / 2.0));
        prep.ops.push_back(Instruction::rot_ge(kLeaker, 0.0, Rng::kPi));
        c.append(std::move(prep));
        c.append(Instruction::cz_gate(kPartner, kLeaker, CZSpec{l1_true}));
        c.append(Instruction::rot_ge(kPartner, phi, Rng::kPi / 2.0));
        Moment window;
        window.ops.push_back(
            Instruction::measure_op(kLeaker, MeasureMode::standard, ReadoutLevels::three_level));
        window.ops.push_back(
            Instruction::measure_op(kPartner, MeasureMode::standard, ReadoutLevels::three_level));
        c.append(std::move(window));

        const auto raws =
            run_shots(c, noise, seed + static_cast<uint64_t>(k) * 0x51ED270B, shots, 1);
        int ones = 0;
        for (const auto& raw : raws) {
            ones += raw.outcomes[0].reported == 1 ? 1 : 0;
        }
        const double p = static_cast<double>(ones) / shots;
        p_e[static_cast<size_t>(k)] = p;
        var[static_cast<size_t>(k)] =
            std::max(p * (1.0 - p), 0.25 / shots) / static_cast<double>(shots);
    }

    // Ordinary least squares of p_e = c + a cos(phi) + b sin(phi). Estimated
    // binomial variances only enter the error bar (sandwich form), not the
    // fit weights: near the oscillation minima the estimated weights
    // correlate with the sampling noise and would bias the offset.
    std::array<std::array<double, 3>, 3> ata{};
    std::array<double, 3> atb{};
    std::vector<std::array<double, 3>> rows(static_cast<size_t>(n_points));
    for (int k = 0; k < n_points; ++k) {
        const std::array<double, 3> row = {1.0, std::cos(phase[static_cast<size_t>(k)]),
                                           std::sin(phase[static_cast<size_t>(k)])};
        rows[static_cast<size_t>(k)] = row;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                ata[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                    row[static_cast<size_t>(i)] * row[static_cast<size_t>(j)];
            }
            atb[static_cast<size_t>(i)] += row[static_cast<size_t>(i)] * p_e[static_cast<size_t>(k)];
        }
    }
    auto det3 = [](const std::array<std::array<double, 3>, 3>& m) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double det = det3(ata);
    if (std::abs(det) < 1e-30) {
        throw std::runtime_error("degenerate phase grid in conditional oscillation fit");
    }
    auto solve_col = [&](const std::array<double, 3>& rhs, int i) {
        auto m = ata;
        for (int r = 0; r < 3; ++r) {
            m[static_cast<size_t>(r)][static_cast<size_t>(i)] = rhs[static_cast<size_t>(r)];
        }
        return det3(m) / det;
    };
    std::array<double, 3> beta{};
    for (int i = 0; i < 3; ++i) {
        beta[static_cast<size_t>(i)] = solve_col(atb, i);
    }
    // Var(c) = sum_k h_k^2 var_k with h = first row of (A^T A)^-1 A^T.
    double var_c = 0.0;
    for (int k = 0; k < n_points; ++k) {
        std::array<double, 3> unit_rhs{};
        for (int i = 0; i < 3; ++i) {
            unit_rhs[static_cast<size_t>(i)] = rows[static_cast<size_t>(k)][static_cast<size_t>(i)];
        }
        const double h_k = solve_col(unit_rhs, 0);
        var_c += h_k * h_k * var[static_cast<size_t>(k)];
    }

    L1Estimate est;
    est.offset = beta[0];
    est.amplitude = std::hypot(beta[1], beta[2]);
    est.l1_tilde = (1.0 - beta[0]) / 2.0;  // M / 2 with M = 1 - offset
    est.sigma = 0.5 * std::sqrt(std::max(var_c, 0.0));
    return est;
}

NoiseModel inject_measurement_leakage(const NoiseModel& noise, double p,
                                      const std::vector<int>& qubits) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("measurement leakage probability outside [0, 1]");
    }
    NoiseModel out = noise;
    for (int q : qubits) {
        auto& qb = out.qubits.at(static_cast<size_t>(q));
        qb.transfer_lru = qb.transfer_lru.with_entry(1, 2, p);
        qb.transfer_standard = qb.transfer_standard.with_entry(1, 2, p);
    }
    return out;
}

NoiseModel set_removal_fraction(const NoiseModel& noise, double fraction,
                                const std::vector<int>& qubits) {
    if (fraction < 0.0 || fraction > 1.0) {
        throw std::invalid_argument("removal fraction outside [0, 1]");
    }
    NoiseModel out = noise;
    for (int q : qubits) {
        auto& qb = out.qubits.at(static_cast<size_t>(q));
        qb.transfer_lru = qb.transfer_lru.with_entry(2, 2, 1.0 - fraction);
    }
    return out;
}

NoiseModel set_ef_assignment_infidelity(const NoiseModel& noise, double infidelity,
                                        const std::vector<int>& qubits) {
    if (infidelity < 0.0 || infidelity > 1.0) {
        throw std::invalid_argument("assignment infidelity outside [0, 1]");
    }
    NoiseModel out = noise;
    for (int q : qubits) {
        auto& qb = out.qubits.at(static_cast<size_t>(q));
        for (auto* a : {&qb.assignment_lru, &qb.assignment_standard}) {
            std::array<std::array<double, 3>, 3> rows;
            for (int s = 0; s < 3; ++s) {
                for (int o = 0; o < 3; ++o) {
                    rows[static_cast<size_t>(s)][static_cast<size_t>(o)] = (*a)(s, o);
                }
            }
            rows[2][1] = infidelity;  // P(1|f); P(2|f) absorbs the change
            rows[2][2] = 1.0 - rows[2][0] - infidelity;
            rows[1][2] = infidelity;  // P(2|e); P(1|e) absorbs the change
            rows[1][1] = 1.0 - rows[1][0] - infidelity;
            if (rows[2][2] < 0.0 || rows[1][1] < 0.0) {
                throw std::invalid_argument("assignment infidelity incompatible with P(0|.)");
            }
            *a = AssignmentMatrix::from_rows(rows);
        }
    }
    return out;
}

}  // namespace lruqec::qec
