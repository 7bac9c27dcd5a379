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

#include "lruqec/qec/record.hpp"

#include <stdexcept>

namespace lruqec::qec {

namespace {

uint8_t to_binary(uint8_t ternary) { return ternary >= 1 ? 1 : 0; }

/// Echo-induced frame toggle of the weight-1 stability checks at round r
/// (1-based): one echo per completed round, so the accumulated toggle in the
/// summed outcome is r(r-1)/2 mod 2.
uint8_t stability_frame_toggle(int round1) {
    return static_cast<uint8_t>((round1 * (round1 - 1) / 2) % 2);
}

}  // namespace

std::vector<uint8_t> compute_detectors(const std::vector<uint8_t>& m,
                                       const std::vector<uint8_t>& stabilizers, int rounds,
                                       int n_measure, ExperimentKind kind) {
    if (static_cast<int>(m.size()) != rounds * n_measure) {
        throw std::invalid_argument("outcome array size does not match rounds * n_measure");
    }
    auto at = [&](int r, int a) { return m[static_cast<size_t>((r - 1) * n_measure + a)]; };

    std::vector<uint8_t> d;
    if (kind == ExperimentKind::memory) {
        if (static_cast<int>(stabilizers.size()) != n_measure) {
            throw std::invalid_argument("memory detectors need one stabilizer per check");
        }
        d.resize(static_cast<size_t>((rounds + 1) * n_measure));
        for (int a = 0; a < n_measure; ++a) {
            for (int r = 1; r <= rounds; ++r) {
                const uint8_t v = r <= 2 ? at(r, a) : static_cast<uint8_t>(at(r, a) ^ at(r - 2, a));
                d[static_cast<size_t>((r - 1) * n_measure + a)] = v;
            }
            const uint8_t m_last = at(rounds, a);
            const uint8_t m_prev = rounds >= 2 ? at(rounds - 1, a) : 0;
            d[static_cast<size_t>(rounds * n_measure + a)] =
                static_cast<uint8_t>(stabilizers[static_cast<size_t>(a)] ^ m_last ^ m_prev);
        }
    } else {
        if (rounds < 2) {
            throw std::invalid_argument("stability detectors need at least two rounds");
        }
        d.resize(static_cast<size_t>((rounds - 1) * n_measure));
        for (int a = 0; a < n_measure; ++a) {
            for (int r = 2; r <= rounds; ++r) {
                const uint8_t v = r == 2 ? at(r, a) : static_cast<uint8_t>(at(r, a) ^ at(r - 2, a));
                d[static_cast<size_t>((r - 2) * n_measure + a)] = v;
            }
        }
    }
    return d;
}

std::vector<uint8_t> compute_detectors(const ShotRecord& record, ExperimentKind kind) {
    return compute_detectors(record.m, record.stabilizers, record.rounds, record.n_measure, kind);
}

std::pair<uint8_t, uint8_t> logical_observables(const ShotRecord& record, ExperimentKind kind) {
    if (kind == ExperimentKind::memory) {
        uint8_t z_raw = 0;
        for (uint8_t b : record.final_data) {
            z_raw ^= b;
        }
        uint8_t z_ideal = 0;
        for (int i = 0; i < 3; ++i) {
            z_ideal ^= (record.init_bits >> i) & 1;
        }
        for (uint8_t f : record.flips) {
            z_ideal ^= f & 1;
        }
        return {z_raw, z_ideal};
    }
    uint8_t z_raw = 0;
    const int r_star = record.last_odd_round();
    for (int a = 0; a < record.n_measure; ++a) {
        z_raw ^= record.m_at(r_star, a);
    }
    return {z_raw, stability_reference_z(record.init_bits, record.rounds)};
}

uint8_t stability_reference_z(uint8_t q_a, int rounds) {
    StabilitySpec ref;
    ref.q_a = q_a;
    ref.rounds = rounds;
    ref.l1 = 0.0;
    ref.lru_on = false;
    const Circuit circuit = build_stability_circuit(ref);
    const NoiseModel noise = NoiseModel::ideal(StabilityLayout::n_qubits);
    ShotPlan plan(circuit, noise);
    Rng rng(0);  // parity of the reference outcome is seed-independent
    const RawShot raw = plan.run(rng);
    const ShotRecord rec = record_from_stability_shot(ref, raw, 0);
    uint8_t z = 0;
    const int r_star = rec.last_odd_round();
    for (int a = 0; a < rec.n_measure; ++a) {
        z ^= rec.m_at(r_star, a);
    }
    return z;
}

ShotRecord record_from_memory_shot(const MemorySpec& spec, const RawShot& raw) {
    using L = MemoryLayout;
    const int R = spec.rounds;
    const int A = L::n_measure;
    if (static_cast<int>(raw.outcomes.size()) != R * A + L::n_data) {
        throw std::invalid_argument("raw shot does not match the memory circuit shape");
    }

    ShotRecord rec;
    rec.kind = ExperimentKind::memory;
    rec.rounds = R;
    rec.n_measure = A;
    rec.init_bits = spec.q_d;
    rec.flips = spec.flips;
    rec.lru_on = spec.lru_on ? 1 : 0;
    rec.l1 = spec.l1;

    rec.m3.resize(static_cast<size_t>(R * A));
    rec.m.resize(static_cast<size_t>(R * A));
    rec.flags.resize(static_cast<size_t>(R * A));
    for (int r = 0; r < R; ++r) {
        for (int a = 0; a < A; ++a) {
            const uint8_t t = static_cast<uint8_t>(raw.outcomes[static_cast<size_t>(r * A + a)].reported);
            rec.m3[static_cast<size_t>(r * A + a)] = t;
            rec.m[static_cast<size_t>(r * A + a)] = to_binary(t);
            rec.flags[static_cast<size_t>(r * A + a)] = t == 2 ? 1 : 0;
        }
    }

    // Final data bits; the echo X gates of rounds 1..R-1 amount to a global
    // flip when R-1 is odd, which the frame correction removes.
    const uint8_t echo_frame = static_cast<uint8_t>((R - 1) % 2);
    std::vector<uint8_t> raw_bits(3);
    rec.final_data.resize(3);
    for (int i = 0; i < 3; ++i) {
        raw_bits[static_cast<size_t>(i)] =
            to_binary(static_cast<uint8_t>(raw.outcomes[static_cast<size_t>(R * A + i)].reported));
        rec.final_data[static_cast<size_t>(i)] =
            static_cast<uint8_t>(raw_bits[static_cast<size_t>(i)] ^ echo_frame);
    }
    // Stabilizer values from adjacent data bits (frame-invariant).
    rec.stabilizers = {static_cast<uint8_t>(raw_bits[0] ^ raw_bits[1]),
                       static_cast<uint8_t>(raw_bits[1] ^ raw_bits[2])};

    rec.detectors = compute_detectors(rec.m, rec.stabilizers, R, A, ExperimentKind::memory);
    const auto [z_raw, z_ideal] = logical_observables(rec, ExperimentKind::memory);
    rec.z_raw = z_raw;
    rec.z_ideal = z_ideal;
    return rec;
}

ShotRecord record_from_stability_shot(const StabilitySpec& spec, const RawShot& raw,
                                      uint8_t z_ideal) {
    using L = StabilityLayout;
    const int R = spec.rounds;
    const int A = L::n_measure;
    if (static_cast<int>(raw.outcomes.size()) != R * A + L::n_data) {
        throw std::invalid_argument("raw shot does not match the stability circuit shape");
    }

    ShotRecord rec;
    rec.kind = ExperimentKind::stability;
    rec.rounds = R;
    rec.n_measure = A;
    rec.init_bits = spec.q_a;
    rec.lru_on = spec.lru_on ? 1 : 0;
    rec.l1 = spec.l1;

    rec.m3.resize(static_cast<size_t>(R * A));
    rec.m.resize(static_cast<size_t>(R * A));
    rec.flags.resize(static_cast<size_t>(R * A));
    for (int r = 0; r < R; ++r) {
        for (int a = 0; a < A; ++a) {
            const uint8_t t = static_cast<uint8_t>(raw.outcomes[static_cast<size_t>(r * A + a)].reported);
            uint8_t b = to_binary(t);
            if (a == 0 || a == A - 1) {
                b ^= stability_frame_toggle(r + 1);
            }
            rec.m3[static_cast<size_t>(r * A + a)] = t;
            rec.m[static_cast<size_t>(r * A + a)] = b;
            rec.flags[static_cast<size_t>(r * A + a)] = t == 2 ? 1 : 0;
        }
    }

    rec.final_data.resize(3);
    for (int i = 0; i < 3; ++i) {
        rec.final_data[static_cast<size_t>(i)] =
            to_binary(static_cast<uint8_t>(raw.outcomes[static_cast<size_t>(R * A + i)].reported));
    }
    rec.stabilizers.clear();  // unused for decoding in stability experiments

    rec.detectors = compute_detectors(rec.m, rec.stabilizers, R, A, ExperimentKind::stability);
    uint8_t z_raw = 0;
    const int r_star = rec.last_odd_round();
    for (int a = 0; a < A; ++a) {
        z_raw ^= rec.m_at(r_star, a);
    }
    rec.z_raw = z_raw;
    rec.z_ideal = z_ideal;
    return rec;
}

}  // namespace lruqec::qec
