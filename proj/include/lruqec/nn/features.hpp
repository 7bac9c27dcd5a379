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
#include <map>
#include <vector>

#include "lruqec/qec/dataset.hpp"

namespace lruqec::nn {

enum class ReadoutMode : uint8_t { two_level, three_level };

/// Per-round network inputs by experiment and readout mode (per measure
/// qubit): memory 3RO = one-hot ternary outcome + detector + leakage flag;
/// memory 2RO = binary outcome + detector; stability 3RO = detector + flag
/// (flags of the round defining z_raw zeroed); stability 2RO = detector.
/// Memory models additionally receive the final-measurement detectors.
struct FeatureSpec {
    qec::ExperimentKind kind = qec::ExperimentKind::memory;
    ReadoutMode mode = ReadoutMode::three_level;
    int n_measure = 2;
    int per_round = 10;
    int final_dim = 2;

    static FeatureSpec make(qec::ExperimentKind kind, ReadoutMode mode);
};

/// One encoded shot: per-round features flattened round-major, the final
/// features, and the training label z_raw xor z_ideal.
struct EncodedShot {
    int rounds = 0;
    std::vector<uint8_t> per_round;  // rounds * per_round entries
    std::vector<uint8_t> final_feats;
    uint8_t label = 0;
    uint8_t z_raw = 0;
    uint8_t z_ideal = 0;
    uint32_t source_index = 0;  // position in the originating dataset
};

struct EncodedDataset {
    FeatureSpec spec;
    std::vector<EncodedShot> shots;

    /// Shot indices grouped by round count (batching requires equal length).
    std::map<int, std::vector<uint32_t>> by_rounds() const;
};

EncodedShot encode_record(const qec::ShotRecord& record, const FeatureSpec& spec);
EncodedDataset encode_dataset(const qec::Dataset& dataset, ReadoutMode mode);

}  // namespace lruqec::nn
