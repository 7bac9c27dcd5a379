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

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "lruqec/io/text_format.hpp"
#include "lruqec/nn/train.hpp"

namespace lruqec::nn {

TrainConfig TrainConfig::memory_default() {
    TrainConfig c;
    c.learning_rate = 1e-3;
    c.batch_size = 64;
    return c;
}

TrainConfig TrainConfig::stability_default() {
    TrainConfig c;
    c.learning_rate = 1.5e-3;
    c.batch_size = 128;
    return c;
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || batch_size < 1 || max_epochs < 1 || aux_weight < 0.0) {
        throw std::invalid_argument("invalid training configuration");
    }
    if (patience > max_epochs) {
        throw std::invalid_argument("patience must not exceed max_epochs");
    }
}

namespace {

/// Per-parameter adaptive moment estimation with the usual decay constants.
struct Adam {
    double lr;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step_count = 0;
    DecoderModel m;
    DecoderModel v;

    Adam(const ModelConfig& cfg, double learning_rate)
        : lr(learning_rate), m(cfg), v(cfg) {
        m.set_zero();
        v.set_zero();
    }

    void step(DecoderModel& params, const DecoderModel& grad) {
        ++step_count;
        const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step_count));
        const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step_count));
        auto p = params.param_ptrs();
        auto g = grad.param_ptrs();
        auto mm = m.param_ptrs();
        auto vv = v.param_ptrs();
        const auto sizes = params.param_sizes();
        for (size_t k = 0; k < p.size(); ++k) {
            double* pk = p[k];
            const double* gk = g[k];
            double* mk = mm[k];
            double* vk = vv[k];
            for (int i = 0; i < sizes[k]; ++i) {
                mk[i] = beta1 * mk[i] + (1.0 - beta1) * gk[i];
                vk[i] = beta2 * vk[i] + (1.0 - beta2) * gk[i] * gk[i];
                pk[i] -= lr * (mk[i] / bc1) / (std::sqrt(vk[i] / bc2) + eps);
            }
        }
    }
};

struct BatchRef {
    int bucket = 0;
    int offset = 0;
    int count = 0;
};

void shuffle_u32(std::vector<uint32_t>& v, Rng& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        const size_t j = static_cast<size_t>(rng.next_u64() % i);
        std::swap(v[i - 1], v[j]);
    }
}

void shuffle_refs(std::vector<BatchRef>& v, Rng& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        const size_t j = static_cast<size_t>(rng.next_u64() % i);
        std::swap(v[i - 1], v[j]);
    }
}

double validation_loss(const DecoderModel& model, const EncodedDataset& data, int batch_size) {
    const auto buckets = data.by_rounds();
    double acc = 0.0;
    long n = 0;
    for (const auto& [rounds, idx] : buckets) {
        for (size_t off = 0; off < idx.size(); off += static_cast<size_t>(batch_size)) {
            const int count = static_cast<int>(
                std::min(static_cast<size_t>(batch_size), idx.size() - off));
            const Batch batch = make_batch(data, idx.data() + off, count);
            const ForwardResult res = model.forward(batch);
            for (int b = 0; b < count; ++b) {
                const double z = res.logit_main(b);
                acc += std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) -
                       batch.labels(b) * z;
            }
            n += count;
        }
    }
    return acc / static_cast<double>(n);
}

}  // namespace

TrainResult train(const ModelConfig& arch, const EncodedDataset& train_data,
                  const EncodedDataset& val_data, const TrainConfig& config) {
    config.validate();
    if (train_data.shots.empty() || val_data.shots.empty()) {
        throw std::invalid_argument("training needs non-empty train and validation sets");
    }

    DecoderModel model(arch);
    model.init_weights(config.seed);
    DecoderModel grad(arch);
    Adam adam(arch, config.learning_rate);
    Rng rng(Rng::stream(config.seed, 0x7261696e).next_u64());

    auto buckets_map = train_data.by_rounds();
    std::vector<std::vector<uint32_t>> buckets;
    buckets.reserve(buckets_map.size());
    for (auto& [rounds, idx] : buckets_map) {
        buckets.push_back(std::move(idx));
    }

    TrainResult result;
    result.best_val_loss = std::numeric_limits<double>::infinity();
    DecoderModel best = model;

    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        std::vector<BatchRef> refs;
        for (size_t bi = 0; bi < buckets.size(); ++bi) {
            shuffle_u32(buckets[bi], rng);
            for (size_t off = 0; off < buckets[bi].size();
                 off += static_cast<size_t>(config.batch_size)) {
                const int count = static_cast<int>(
                    std::min(static_cast<size_t>(config.batch_size), buckets[bi].size() - off));
                refs.push_back({static_cast<int>(bi), static_cast<int>(off), count});
            }
        }
        shuffle_refs(refs, rng);

        double train_acc = 0.0;
        long n_seen = 0;
        for (const BatchRef& ref : refs) {
            const Batch batch = make_batch(
                train_data, buckets[static_cast<size_t>(ref.bucket)].data() + ref.offset,
                ref.count);
            grad.set_zero();
            const LossTerms terms = forward_backward(model, batch, config.aux_weight, grad);
            adam.step(model, grad);
            train_acc += terms.total * ref.count;
            n_seen += ref.count;
        }

        const double val = validation_loss(model, val_data, config.batch_size);
        result.trace.push_back({epoch, train_acc / static_cast<double>(n_seen), val});
        result.epochs_run = epoch + 1;
        if (val < result.best_val_loss) {
            result.best_val_loss = val;
            result.best_epoch = epoch;
            best = model;
        } else if (epoch - result.best_epoch >= config.patience) {
            break;
        }
    }

    result.model = std::move(best);
    return result;
}

void save_trace_csv(const std::vector<EpochStats>& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << "epoch,train_loss,val_loss\n";
    for (const auto& e : trace) {
        out << e.epoch << "," << io::full_precision(e.train_loss) << ","
            << io::full_precision(e.val_loss) << "\n";
    }
}

}  // namespace lruqec::nn
