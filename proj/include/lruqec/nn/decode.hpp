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

#include <vector>

#include "lruqec/analysis/fits.hpp"
#include "lruqec/nn/decoder_model.hpp"

namespace lruqec::nn {

/// Threshold p_out at 1/2; the shot is decoded correctly when
/// z_flip xor z_raw equals z_ideal.
bool decide(double p_out, uint8_t z_raw, uint8_t z_ideal);

/// Geometric mean of the ensemble outputs, clamped to [eps, 1] with
/// eps = 1e-12 before taking logarithms.
double ensemble_predict(const std::vector<double>& member_outputs);

struct DecodeResult {
    std::vector<double> p_out;     // dataset order
    std::vector<uint8_t> success;  // thresholded at 1/2
};

DecodeResult decode_dataset(const DecoderModel& model, const EncodedDataset& data,
                            int batch_size = 256);
DecodeResult decode_ensemble(const std::vector<DecoderModel>& models, const EncodedDataset& data,
                             int batch_size = 256);

/// Baseline ignoring all syndrome history: correct the raw logical value by
/// the majority of the final data bits relative to the nearest codeword of
/// the initialization coset. Memory records only.
bool majority_vote_success(const qec::ShotRecord& record);

/// Logical error probability per round count (binomial sigma floored at
/// 1/(2n) when p is 0 or 1), from per-shot success flags aligned with the
/// dataset order.
std::vector<analysis::PlPoint> logical_error_by_rounds(const qec::Dataset& dataset,
                                                       const std::vector<uint8_t>& success);

}  // namespace lruqec::nn
