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

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "lruqec/nn/decode.hpp"

namespace lruqec::nn {

bool decide(double p_out, uint8_t z_raw, uint8_t z_ideal) {
    if (!(p_out >= 0.0 && p_out <= 1.0)) {
        throw std::invalid_argument("p_out outside [0, 1]");
    }
    const uint8_t z_flip = p_out > 0.5 ? 1 : 0;
    return (z_flip ^ z_raw) == z_ideal;
}

double ensemble_predict(const std::vector<double>& member_outputs) {
    if (member_outputs.empty()) {
        throw std::invalid_argument("empty ensemble");
    }
    constexpr double kEps = 1e-12;
    double log_sum = 0.0;
    for (double p : member_outputs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("ensemble member output outside [0, 1]");
        }
        log_sum += std::log(std::clamp(p, kEps, 1.0));
    }
    return std::exp(log_sum / static_cast<double>(member_outputs.size()));
}

namespace {

DecodeResult decode_impl(const std::vector<const DecoderModel*>& models,
                         const EncodedDataset& data, int batch_size) {
    DecodeResult out;
    out.p_out.assign(data.shots.size(), 0.0);
    out.success.assign(data.shots.size(), 0);
    const auto buckets = data.by_rounds();
    constexpr double kEps = 1e-12;
    for (const auto& [rounds, idx] : buckets) {
        for (size_t off = 0; off < idx.size(); off += static_cast<size_t>(batch_size)) {
            const int count =
                static_cast<int>(std::min(static_cast<size_t>(batch_size), idx.size() - off));
            const Batch batch = make_batch(data, idx.data() + off, count);
            Vector log_acc = Vector::Zero(count);
            for (const DecoderModel* model : models) {
                const ForwardResult res = model->forward(batch);
                for (int b = 0; b < count; ++b) {
                    log_acc(b) += std::log(std::clamp(res.p_main(b), kEps, 1.0));
                }
            }
            for (int b = 0; b < count; ++b) {
                const size_t shot_idx = idx[off + static_cast<size_t>(b)];
                const double p = std::exp(log_acc(b) / static_cast<double>(models.size()));
                out.p_out[shot_idx] = p;
                out.success[shot_idx] =
                    decide(p, data.shots[shot_idx].z_raw, data.shots[shot_idx].z_ideal) ? 1 : 0;
            }
        }
    }
    return out;
}

}  // namespace

DecodeResult decode_dataset(const DecoderModel& model, const EncodedDataset& data,
                            int batch_size) {
    return decode_impl({&model}, data, batch_size);
}

DecodeResult decode_ensemble(const std::vector<DecoderModel>& models, const EncodedDataset& data,
                             int batch_size) {
    if (models.empty()) {
        throw std::invalid_argument("empty ensemble");
    }
    std::vector<const DecoderModel*> ptrs;
    for (const auto& m : models) {
        ptrs.push_back(&m);
    }
    return decode_impl(ptrs, data, batch_size);
}

bool majority_vote_success(const qec::ShotRecord& record) {
    if (record.kind != qec::ExperimentKind::memory) {
        throw std::invalid_argument("majority vote applies to memory records only");
    }
    int weight = 0;
    uint8_t init_parity = 0;
    for (int i = 0; i < 3; ++i) {
        const uint8_t init_bit = (record.init_bits >> i) & 1;
        weight += (record.final_data[static_cast<size_t>(i)] ^ init_bit) & 1;
        init_parity ^= init_bit;
    }
    const uint8_t z_hat = init_parity ^ (weight >= 2 ? 1 : 0);
    return z_hat == record.z_ideal;
}

std::vector<analysis::PlPoint> logical_error_by_rounds(const qec::Dataset& dataset,
                                                       const std::vector<uint8_t>& success) {
    if (success.size() != dataset.shots.size()) {
        throw std::invalid_argument("success flags do not match the dataset");
    }
    std::map<int, analysis::PlPoint> acc;
    for (size_t i = 0; i < dataset.shots.size(); ++i) {
        analysis::PlPoint& pt = acc[dataset.shots[i].rounds];
        pt.rounds = dataset.shots[i].rounds;
        pt.shots += 1;
        pt.failures += success[i] ? 0 : 1;
    }
    std::vector<analysis::PlPoint> out;
    for (auto& [rounds, pt] : acc) {
        pt.p = static_cast<double>(pt.failures) / static_cast<double>(pt.shots);
        const double n = static_cast<double>(pt.shots);
        pt.sigma = std::max(std::sqrt(pt.p * (1.0 - pt.p) / n), 0.5 / n);
        out.push_back(pt);
    }
    return out;
}

}  // namespace lruqec::nn
