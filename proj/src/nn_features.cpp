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

#include "lruqec/nn/features.hpp"

#include <stdexcept>

namespace lruqec::nn {

FeatureSpec FeatureSpec::make(qec::ExperimentKind kind, ReadoutMode mode) {
    FeatureSpec s;
    s.kind = kind;
    s.mode = mode;
    if (kind == qec::ExperimentKind::memory) {
        s.n_measure = qec::MemoryLayout::n_measure;
        s.per_round = mode == ReadoutMode::three_level ? 5 * s.n_measure : 2 * s.n_measure;
        s.final_dim = s.n_measure;  // final-measurement detectors
    } else {
        s.n_measure = qec::StabilityLayout::n_measure;
        s.per_round = mode == ReadoutMode::three_level ? 2 * s.n_measure : 1 * s.n_measure;
        s.final_dim = 0;
    }
    return s;
}

EncodedShot encode_record(const qec::ShotRecord& record, const FeatureSpec& spec) {
    if (record.kind != spec.kind) {
        throw std::invalid_argument("record kind does not match the feature spec");
    }
    const int R = record.rounds;
    const int A = record.n_measure;
    EncodedShot out;
    out.rounds = R;
    out.label = record.z_raw ^ record.z_ideal;
    out.z_raw = record.z_raw;
    out.z_ideal = record.z_ideal;
    out.per_round.assign(static_cast<size_t>(R) * static_cast<size_t>(spec.per_round), 0);

    auto put = [&](int r, int slot, uint8_t v) {
        out.per_round[static_cast<size_t>((r - 1) * spec.per_round + slot)] = v;
    };

    if (spec.kind == qec::ExperimentKind::memory) {
        for (int r = 1; r <= R; ++r) {
            for (int a = 0; a < A; ++a) {
                const uint8_t d = record.detectors[static_cast<size_t>((r - 1) * A + a)];
                if (spec.mode == ReadoutMode::three_level) {
                    // [one-hot m3 (3), detector, flag] per measure qubit.
                    const int base = 5 * a;
                    put(r, base + record.m3_at(r, a), 1);
                    put(r, base + 3, d);
                    put(r, base + 4, record.flag_at(r, a));
                } else {
                    const int base = 2 * a;
                    put(r, base + 0, record.m_at(r, a));
                    put(r, base + 1, d);
                }
            }
        }
        out.final_feats.resize(static_cast<size_t>(A));
        for (int a = 0; a < A; ++a) {
            // No leakage information accompanies the final data readout.
            out.final_feats[static_cast<size_t>(a)] =
                record.detectors[static_cast<size_t>(R * A + a)];
        }
    } else {
        const int r_star = record.last_odd_round();
        for (int r = 1; r <= R; ++r) {
            for (int a = 0; a < A; ++a) {
                const uint8_t d =
                    r >= 2 ? record.detectors[static_cast<size_t>((r - 2) * A + a)] : 0;
                if (spec.mode == ReadoutMode::three_level) {
                    const int base = 2 * a;
                    put(r, base + 0, d);
                    // Flags of the z_raw round are withheld from the network.
                    put(r, base + 1, r == r_star ? 0 : record.flag_at(r, a));
                } else {
                    put(r, a, d);
                }
            }
        }
    }
    return out;
}

EncodedDataset encode_dataset(const qec::Dataset& dataset, ReadoutMode mode) {
    EncodedDataset out;
    out.spec = FeatureSpec::make(dataset.kind, mode);
    out.shots.reserve(dataset.shots.size());
    for (size_t i = 0; i < dataset.shots.size(); ++i) {
        EncodedShot s = encode_record(dataset.shots[i], out.spec);
        s.source_index = static_cast<uint32_t>(i);
        out.shots.push_back(std::move(s));
    }
    return out;
}

std::map<int, std::vector<uint32_t>> EncodedDataset::by_rounds() const {
    std::map<int, std::vector<uint32_t>> buckets;
    for (size_t i = 0; i < shots.size(); ++i) {
        buckets[shots[i].rounds].push_back(static_cast<uint32_t>(i));
    }
    return buckets;
}

}  // namespace lruqec::nn
