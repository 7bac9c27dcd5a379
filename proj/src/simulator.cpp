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

#include "lruqec/simulator.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>

namespace lruqec {

namespace {

constexpr double kNegligibleRate = 1e-14;  // 1/ns; below this an interval is jump-free

size_t pow3(int n) {
    size_t d = 1;
    for (int i = 0; i < n; ++i) {
        d *= 3;
    }
    return d;
}

}  // namespace

RateTable RateTable::build(const NoiseModel& noise, int n, uint64_t qubit_mask) {
    const size_t dim = pow3(n);
    // Per-qubit out-rate by level: 0, gamma1 + gamma_phi, gamma_ef + 4*gamma_phi.
    std::vector<std::array<double, 3>> level_rate(static_cast<size_t>(n), {0.0, 0.0, 0.0});
    for (int q = 0; q < n; ++q) {
        if ((qubit_mask >> q) & 1ULL) {
            const double gphi = noise.gamma_phi(q);
            level_rate[static_cast<size_t>(q)] = {0.0, noise.gamma1(q) + gphi,
                                                  noise.gamma_ef(q) + 4.0 * gphi};
        }
    }
    RateTable table;
    table.group.resize(dim);
    std::map<double, uint16_t> seen;
    for (size_t b = 0; b < dim; ++b) {
        double total = 0.0;
        size_t rem = b;
        for (int q = n - 1; q >= 0; --q) {
            total += level_rate[static_cast<size_t>(q)][rem % 3];
            rem /= 3;
        }
        auto [it, inserted] = seen.try_emplace(total, static_cast<uint16_t>(table.rate.size()));
        if (inserted) {
            table.rate.push_back(total);
        }
        table.group[b] = it->second;
        table.max_rate = std::max(table.max_rate, total);
    }
    return table;
}

namespace {

/// One damping / dephasing jump channel of one qubit.
struct JumpChannel {
    int qubit;
    int kind;  // 0: |g><e|, 1: |e><f|, 2: diag(0,1,2) dephasing
    double rate;
};

void apply_jump(QutritRegister& state, const JumpChannel& ch) {
    const size_t s = state.stride(ch.qubit);
    auto& amp = state.amplitudes();
    const size_t dim = state.dim();
    if (ch.kind == 2) {
        for (size_t i = 0; i < dim; ++i) {
            amp[i] *= static_cast<double>(QutritRegister::digit(i, s));
        }
    } else {
        const int from = ch.kind == 0 ? 1 : 2;
        const int to = from - 1;
        const size_t block = 3 * s;
        for (size_t base = 0; base < dim; base += block) {
            for (size_t j = 0; j < s; ++j) {
                const size_t src = base + static_cast<size_t>(from) * s + j;
                const size_t dst = base + static_cast<size_t>(to) * s + j;
                const size_t other =
                    base + static_cast<size_t>(from == 1 ? 2 : 0) * s + j;
                amp[dst] = amp[src];
                amp[src] = 0.0;
                amp[other] = 0.0;
            }
        }
    }
    state.renormalize();
}

void decohere_interval(QutritRegister& state, const RateTable& table, const NoiseModel& noise,
                       uint64_t qubit_mask, double duration_ns, Rng& rng) {
    if (duration_ns < 0.0) {
        throw std::invalid_argument("decoherence duration must be non-negative");
    }
    if (duration_ns == 0.0 || table.max_rate * duration_ns < kNegligibleRate) {
        return;
    }
    const size_t dim = state.dim();
    const size_t n_groups = table.rate.size();
    std::vector<double> w(n_groups);
    std::vector<double> decay(n_groups);
    auto& amp = state.amplitudes();

    double t_rem = duration_ns;
    for (;;) {
        std::fill(w.begin(), w.end(), 0.0);
        for (size_t b = 0; b < dim; ++b) {
            w[table.group[b]] += std::norm(amp[b]);
        }
        double total_w = 0.0;
        for (double v : w) {
            total_w += v;
        }
        auto survival = [&](double t) {
            double s = 0.0;
            for (size_t k = 0; k < n_groups; ++k) {
                s += w[k] * std::exp(-table.rate[k] * t);
            }
            return s / total_w;
        };
        const double u = rng.uniform_open();
        const double s_end = survival(t_rem);
        double t_jump = -1.0;
        if (s_end < u) {
            // Solve survival(t) = u on (0, t_rem); survival is strictly
            // decreasing. Newton with a bisection safety bracket.
            double lo = 0.0;
            double hi = t_rem;
            const double r_eff = -std::log(s_end) / t_rem;
            double t = std::min(t_rem * 0.999, -std::log(u) / r_eff);
            for (int it = 0; it < 80; ++it) {
                double s = 0.0;
                double ds = 0.0;
                for (size_t k = 0; k < n_groups; ++k) {
                    const double e = w[k] * std::exp(-table.rate[k] * t);
                    s += e;
                    ds -= table.rate[k] * e;
                }
                s /= total_w;
                ds /= total_w;
                const double g = s - u;
                if (std::abs(g) < 1e-13) {
                    break;
                }
                if (g > 0.0) {
                    lo = t;
                } else {
                    hi = t;
                }
                double step = ds != 0.0 ? t - g / ds : 0.5 * (lo + hi);
                t = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
            }
            t_jump = t;
        }

        const double t_evolve = t_jump >= 0.0 ? t_jump : t_rem;
        // No-jump evolution: scale each group by exp(-rate * t / 2).
        for (size_t k = 0; k < n_groups; ++k) {
            decay[k] = std::exp(-0.5 * table.rate[k] * t_evolve);
        }
        for (size_t b = 0; b < dim; ++b) {
            amp[b] *= decay[table.group[b]];
        }
        state.renormalize();
        if (t_jump < 0.0) {
            return;
        }

        // Pick the jump channel with probability proportional to <L^dag L>.
        std::vector<JumpChannel> channels;
        std::vector<double> weights;
        double weight_sum = 0.0;
        for (int q = 0; q < state.n(); ++q) {
            if (!((qubit_mask >> q) & 1ULL)) {
                continue;
            }
            const auto pops = state.level_populations(q);
            const double gphi = noise.gamma_phi(q);
            const double w1 = noise.gamma1(q) * pops[1];
            const double w2 = noise.gamma_ef(q) * pops[2];
            const double w3 = gphi * (pops[1] + 4.0 * pops[2]);
            if (w1 > 0.0) {
                channels.push_back({q, 0, w1});
                weights.push_back(w1);
                weight_sum += w1;
            }
            if (w2 > 0.0) {
                channels.push_back({q, 1, w2});
                weights.push_back(w2);
                weight_sum += w2;
            }
            if (w3 > 0.0) {
                channels.push_back({q, 2, w3});
                weights.push_back(w3);
                weight_sum += w3;
            }
        }
        if (channels.empty()) {
            return;  // numerically jump-free (e.g. everything already in |g>)
        }
        const int pick = rng.sample_discrete(weights.data(), static_cast<int>(weights.size()),
                                             weight_sum);
        apply_jump(state, channels[static_cast<size_t>(pick)]);
        t_rem -= t_evolve;
        if (t_rem <= 0.0) {
            return;
        }
    }
}

}  // namespace

void apply_decoherence(QutritRegister& state, const RateTable& table, const NoiseModel& noise,
                       uint64_t qubit_mask, double duration_ns, Rng& rng) {
    decohere_interval(state, table, noise, qubit_mask, duration_ns, rng);
}

void apply_decoherence(QutritRegister& state, const std::vector<int>& qubits, double duration_ns,
                       const NoiseModel& noise, Rng& rng) {
    uint64_t mask = 0;
    for (int q : qubits) {
        if (q < 0 || q >= state.n()) {
            throw std::invalid_argument("decoherence qubit index out of range");
        }
        mask |= 1ULL << q;
    }
    const RateTable table = RateTable::build(noise, state.n(), mask);
    decohere_interval(state, table, noise, mask, duration_ns, rng);
}

MeasureOutcome measure(QutritRegister& state, int q, const NoiseModel& noise, MeasureMode mode,
                       ReadoutLevels readout, Rng& rng) {
    if (q < 0 || q >= state.n()) {
        throw std::invalid_argument("measured qubit index out of range");
    }
    const auto pops = state.level_populations(q);
    const double total = pops[0] + pops[1] + pops[2];
    const int projected = rng.sample_discrete(pops.data(), 3, total);
    state.project_level(q, projected);

    const QubitNoise& qn = noise.qubits[static_cast<size_t>(q)];
    const AssignmentMatrix& assign =
        mode == MeasureMode::lru ? qn.assignment_lru : qn.assignment_standard;
    const TransferMatrix& transfer =
        mode == MeasureMode::lru ? qn.transfer_lru : qn.transfer_standard;
    const int reported = assign.sample(projected, rng);
    const int post = transfer.sample(projected, rng);
    state.relabel_level(q, projected, post);

    MeasureOutcome out;
    out.qubit = q;
    out.projected = projected;
    out.reported = reported;
    out.post = post;
    out.mode = mode;
    out.readout = readout;
    return out;
}

ShotPlan::ShotPlan(const Circuit& circuit, const NoiseModel& noise,
                   const std::map<uint64_t, RateTable>* shared_tables)
    : circuit_(&circuit), noise_(&noise), shared_tables_(shared_tables) {
    circuit.validate();
    noise.validate();
    if (noise.n_qubits() != circuit.n_qutrits) {
        throw std::invalid_argument("noise model size does not match circuit");
    }
    full_mask_ = (1ULL << circuit.n_qutrits) - 1;
    moment_ns_.reserve(circuit.moments.size());
    std::vector<uint64_t> needed = {full_mask_};
    for (const auto& m : circuit.moments) {
        moment_ns_.push_back(moment_duration_ns(m, noise.durations));
        uint64_t measured = 0;
        for (const auto& op : m.ops) {
            if (op.kind == OpKind::measure) {
                measured |= 1ULL << op.qubits[0];
            }
        }
        if (measured != 0) {
            needed.push_back(full_mask_ & ~measured);
        }
    }
    for (uint64_t mask : needed) {
        const bool have_shared = shared_tables_ != nullptr && shared_tables_->count(mask) != 0;
        if (!have_shared && !tables_.count(mask)) {
            tables_.emplace(mask, RateTable::build(noise, circuit.n_qutrits, mask));
        }
    }
}

const RateTable& ShotPlan::table_for(uint64_t mask) const {
    if (shared_tables_ != nullptr) {
        auto it = shared_tables_->find(mask);
        if (it != shared_tables_->end()) {
            return it->second;
        }
    }
    return tables_.at(mask);
}

RawShot ShotPlan::run(Rng& rng, QutritRegister* final_state) const {
    QutritRegister state(circuit_->n_qutrits);
    RawShot shot;
    const RateTable& full_table = table_for(full_mask_);

    for (size_t mi = 0; mi < circuit_->moments.size(); ++mi) {
        const Moment& m = circuit_->moments[mi];
        const double ns = moment_ns_[mi];
        const bool has_measure =
            std::any_of(m.ops.begin(), m.ops.end(),
                        [](const Instruction& op) { return op.kind == OpKind::measure; });

        if (has_measure) {
            // Projection + assignment + transfer at window start; the
            // transfer matrix already accounts for the measured qubit's
            // evolution over the window, so it idles frozen afterwards.
            uint64_t measured = 0;
            for (const auto& op : m.ops) {
                if (op.kind == OpKind::measure) {
                    shot.outcomes.push_back(
                        measure(state, op.qubits[0], *noise_, op.mode, op.readout, rng));
                    measured |= 1ULL << op.qubits[0];
                }
            }
            const uint64_t idle_mask = full_mask_ & ~measured;
            const RateTable& idle_table = table_for(idle_mask);
            decohere_interval(state, idle_table, *noise_, idle_mask, 0.5 * ns, rng);
            for (const auto& op : m.ops) {
                if (op.kind == OpKind::echo_x) {
                    for (int q : op.qubits) {
                        state.apply_ge_rotation(q, 0.0, Rng::kPi);
                    }
                }
            }
            decohere_interval(state, idle_table, *noise_, idle_mask, 0.5 * ns, rng);
            continue;
        }

        // Gate moments: decoherence split symmetrically around the unitaries.
        decohere_interval(state, full_table, *noise_, full_mask_, 0.5 * ns, rng);
        for (const auto& op : m.ops) {
            switch (op.kind) {
                case OpKind::prep_ground: {
                    const auto pops = state.level_populations(op.qubits[0]);
                    if (!(pops[0] > 1e-15)) {
                        throw std::runtime_error("prep_ground on a qubit with no |g> weight");
                    }
                    state.project_level(op.qubits[0], 0);
                    break;
                }
                case OpKind::rot_ge:
                    state.apply_ge_rotation(op.qubits[0], op.axis_phi, op.angle);
                    break;
                case OpKind::rot_ef:
                    state.apply_ef_rotation(op.qubits[0], op.angle);
                    break;
                case OpKind::echo_x:
                    for (int q : op.qubits) {
                        state.apply_ge_rotation(q, 0.0, Rng::kPi);
                    }
                    break;
                case OpKind::cz:
                    state.apply_cz(op.qubits[0], op.qubits[1], op.cz);
                    break;
                case OpKind::idle:
                case OpKind::measure:
                    break;
            }
        }
        decohere_interval(state, full_table, *noise_, full_mask_, 0.5 * ns, rng);
    }

    if (final_state != nullptr) {
        *final_state = state;
    }
    return shot;
}

std::vector<RawShot> run_shots(const Circuit& circuit, const NoiseModel& noise,
                               uint64_t master_seed, int n_shots, int n_threads) {
    const ShotPlan plan(circuit, noise);
    std::vector<RawShot> shots(static_cast<size_t>(n_shots));
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(1, n_threads))
    for (int i = 0; i < n_shots; ++i) {
        Rng rng = Rng::stream(master_seed, static_cast<uint64_t>(i));
        shots[static_cast<size_t>(i)] = plan.run(rng);
    }
    return shots;
}

std::vector<RawShot> run_shots_serial(const Circuit& circuit, const NoiseModel& noise,
                                      uint64_t master_seed, int n_shots) {
    const ShotPlan plan(circuit, noise);
    std::vector<RawShot> shots(static_cast<size_t>(n_shots));
    for (int i = 0; i < n_shots; ++i) {
        Rng rng = Rng::stream(master_seed, static_cast<uint64_t>(i));
        shots[static_cast<size_t>(i)] = plan.run(rng);
    }
    return shots;
}

}  // namespace lruqec
