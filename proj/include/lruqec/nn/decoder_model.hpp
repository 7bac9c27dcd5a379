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

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lruqec/nn/features.hpp"
#include "lruqec/rng.hpp"

namespace lruqec::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Standard LSTM cell (no peepholes), gate row blocks ordered [i f g o].
struct LstmLayer {
    Matrix wx;  // 4H x F
    Matrix wh;  // 4H x H
    Vector b;   // 4H
    int hidden() const { return static_cast<int>(wh.cols()); }
    int input() const { return static_cast<int>(wx.cols()); }
};

struct DenseLayer {
    Matrix w;  // out x in
    Vector b;  // out
};

struct ModelConfig {
    qec::ExperimentKind kind = qec::ExperimentKind::memory;
    ReadoutMode mode = ReadoutMode::three_level;
    int n_lstm = 2;
    int d_lstm = 24;
    int n_eval = 2;
    int d_eval = 24;
    int input_dim = 10;
    int final_dim = 2;
    bool has_aux = true;

    /// Repetition-5 sizes: 2 LSTM layers of 24 units, 2 evaluation layers of
    /// 24 units, main + auxiliary heads.
    static ModelConfig memory_default(ReadoutMode mode);
    /// Stability-7 sizes: 4 LSTM layers of 32 units, 2 evaluation layers of
    /// 32 units, single head.
    static ModelConfig stability_default(ReadoutMode mode);
};

/// Fixed-length batch: every shot has the same round count.
struct Batch {
    std::vector<Matrix> rounds;  // per round, B x input_dim
    Matrix final_feats;          // B x final_dim
    Vector labels;               // B
    int size() const { return static_cast<int>(labels.size()); }
};

Batch make_batch(const EncodedDataset& data, const uint32_t* indices, int count);

struct ForwardResult {
    Vector logit_main;
    Vector p_main;
    Vector logit_aux;  // empty unless the model has an auxiliary head
    Vector p_aux;
};

class DecoderModel {
  public:
    DecoderModel() = default;
    explicit DecoderModel(const ModelConfig& config);

    /// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases except
    /// the forget-gate bias at 1.
    void init_weights(uint64_t seed);
    void set_zero();

    const ModelConfig& config() const { return cfg; }
    size_t parameter_count() const;

    /// Batched forward (Eigen matrix products over the batch dimension).
    ForwardResult forward(const Batch& batch) const;

    /// Plain-loop single-shot forward kept as the reference implementation;
    /// must agree with forward() to floating-point accuracy.
    ForwardResult forward_reference(const EncodedShot& shot) const;

    /// Flattened parameter views in a fixed order (lstm, main head, aux head).
    std::vector<double*> param_ptrs();
    std::vector<const double*> param_ptrs() const;
    std::vector<int> param_sizes() const;

    void save(const std::string& path) const;
    static DecoderModel load(const std::string& path);

    ModelConfig cfg;
    std::vector<LstmLayer> lstm;
    std::vector<DenseLayer> main_head;  // n_eval hidden layers + 1 output row
    std::vector<DenseLayer> aux_head;
};

struct LossTerms {
    double main = 0.0;
    double aux = 0.0;
    double total = 0.0;
};

/// Mean binary cross-entropy of the batch (main head; plus aux_weight times
/// the auxiliary term when present), with gradients accumulated into `grad`,
/// a model of identical shape.
LossTerms forward_backward(const DecoderModel& model, const Batch& batch, double aux_weight,
                           DecoderModel& grad);

LossTerms batch_loss(const DecoderModel& model, const Batch& batch, double aux_weight);

}  // namespace lruqec::nn
