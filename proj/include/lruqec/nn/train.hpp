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

#include <string>
#include <vector>

#include "lruqec/nn/decoder_model.hpp"

namespace lruqec::nn {

struct TrainConfig {
    double learning_rate = 1e-3;
    int batch_size = 64;
    int patience = 100;   // epochs without validation improvement
    int max_epochs = 500;
    double aux_weight = 0.5;  // memory models only
    uint64_t seed = 1;

    static TrainConfig memory_default();
    static TrainConfig stability_default();
    void validate() const;
};

struct EpochStats {
    int epoch = 0;
    double train_loss = 0.0;
    double val_loss = 0.0;
};

struct TrainResult {
    DecoderModel model;  // weights of the best validation epoch
    std::vector<EpochStats> trace;
    int best_epoch = -1;
    double best_val_loss = 0.0;
    int epochs_run = 0;
};

/// Minimize the binary cross-entropy of p_out against z_raw xor z_ideal
/// (plus the aux_weight-scaled auxiliary term for memory models) with Adam.
/// Shots are bucketed by round count, shuffled per epoch with the seeded
/// generator, and the run stops early once the validation loss (main head
/// only) has not improved for `patience` epochs. Deterministic for a fixed
/// seed and dataset.
TrainResult train(const ModelConfig& arch, const EncodedDataset& train_data,
                  const EncodedDataset& val_data, const TrainConfig& config);

/// Training trace as CSV (epoch, train_loss, val_loss).
void save_trace_csv(const std::vector<EpochStats>& trace, const std::string& path);

}  // namespace lruqec::nn
