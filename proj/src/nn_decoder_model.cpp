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
#include <stdexcept>

#include <json.hpp>

#include "lruqec/nn/decoder_model.hpp"

namespace lruqec::nn {

namespace {

double sigmoid(double z) { return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)); }

void init_matrix(Matrix& m, double scale, Rng& rng) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            m(i, j) = scale * (2.0 * rng.uniform() - 1.0);
        }
    }
}

}  // namespace

ModelConfig ModelConfig::memory_default(ReadoutMode mode) {
    ModelConfig c;
    c.kind = qec::ExperimentKind::memory;
    c.mode = mode;
    c.n_lstm = 2;
    c.d_lstm = 24;
    c.n_eval = 2;
    c.d_eval = 24;
    const FeatureSpec f = FeatureSpec::make(c.kind, mode);
    c.input_dim = f.per_round;
    c.final_dim = f.final_dim;
    c.has_aux = true;
    return c;
}

ModelConfig ModelConfig::stability_default(ReadoutMode mode) {
    ModelConfig c;
    c.kind = qec::ExperimentKind::stability;
    c.mode = mode;
    c.n_lstm = 4;
    c.d_lstm = 32;
    c.n_eval = 2;
    c.d_eval = 32;
    const FeatureSpec f = FeatureSpec::make(c.kind, mode);
    c.input_dim = f.per_round;
    c.final_dim = f.final_dim;
    c.has_aux = false;
    return c;
}

DecoderModel::DecoderModel(const ModelConfig& config) : cfg(config) {
    lstm.resize(static_cast<size_t>(cfg.n_lstm));
    for (int l = 0; l < cfg.n_lstm; ++l) {
        const int in = l == 0 ? cfg.input_dim : cfg.d_lstm;
        lstm[static_cast<size_t>(l)].wx = Matrix::Zero(4 * cfg.d_lstm, in);
        lstm[static_cast<size_t>(l)].wh = Matrix::Zero(4 * cfg.d_lstm, cfg.d_lstm);
        lstm[static_cast<size_t>(l)].b = Vector::Zero(4 * cfg.d_lstm);
    }
    auto build_head = [&](int in_dim) {
        std::vector<DenseLayer> head;
        int in = in_dim;
        for (int i = 0; i < cfg.n_eval; ++i) {
            head.push_back({Matrix::Zero(cfg.d_eval, in), Vector::Zero(cfg.d_eval)});
            in = cfg.d_eval;
        }
        head.push_back({Matrix::Zero(1, in), Vector::Zero(1)});
        return head;
    };
    main_head = build_head(cfg.d_lstm + cfg.final_dim);
    if (cfg.has_aux) {
        aux_head = build_head(cfg.d_lstm);
    }
}

void DecoderModel::init_weights(uint64_t seed) {
    Rng rng(seed);
    for (auto& layer : lstm) {
        init_matrix(layer.wx, 1.0 / std::sqrt(static_cast<double>(layer.input())), rng);
        init_matrix(layer.wh, 1.0 / std::sqrt(static_cast<double>(layer.hidden())), rng);
        layer.b.setZero();
        layer.b.segment(layer.hidden(), layer.hidden()).setConstant(1.0);  // forget gate
    }
    for (auto* head : {&main_head, &aux_head}) {
        for (auto& d : *head) {
            init_matrix(d.w, 1.0 / std::sqrt(static_cast<double>(d.w.cols())), rng);
            d.b.setZero();
        }
    }
}

void DecoderModel::set_zero() {
    for (auto& layer : lstm) {
        layer.wx.setZero();
        layer.wh.setZero();
        layer.b.setZero();
    }
    for (auto* head : {&main_head, &aux_head}) {
        for (auto& d : *head) {
            d.w.setZero();
            d.b.setZero();
        }
    }
}

size_t DecoderModel::parameter_count() const {
    size_t n = 0;
    for (const int s : param_sizes()) {
        n += static_cast<size_t>(s);
    }
    return n;
}

std::vector<double*> DecoderModel::param_ptrs() {
    std::vector<double*> p;
    for (auto& layer : lstm) {
        p.push_back(layer.wx.data());
        p.push_back(layer.wh.data());
        p.push_back(layer.b.data());
    }
    for (auto* head : {&main_head, &aux_head}) {
        for (auto& d : *head) {
            p.push_back(d.w.data());
            p.push_back(d.b.data());
        }
    }
    return p;
}

std::vector<const double*> DecoderModel::param_ptrs() const {
    std::vector<const double*> p;
    for (const auto& layer : lstm) {
        p.push_back(layer.wx.data());
        p.push_back(layer.wh.data());
        p.push_back(layer.b.data());
    }
    for (const auto* head : {&main_head, &aux_head}) {
        for (const auto& d : *head) {
            p.push_back(d.w.data());
            p.push_back(d.b.data());
        }
    }
    return p;
}

std::vector<int> DecoderModel::param_sizes() const {
    std::vector<int> s;
    for (const auto& layer : lstm) {
        s.push_back(static_cast<int>(layer.wx.size()));
        s.push_back(static_cast<int>(layer.wh.size()));
        s.push_back(static_cast<int>(layer.b.size()));
    }
    for (const auto* head : {&main_head, &aux_head}) {
        for (const auto& d : *head) {
            s.push_back(static_cast<int>(d.w.size()));
            s.push_back(static_cast<int>(d.b.size()));
        }
    }
    return s;
}

ForwardResult DecoderModel::forward_reference(const EncodedShot& shot) const {
    const int H = cfg.d_lstm;
    std::vector<std::vector<double>> h(static_cast<size_t>(cfg.n_lstm),
                                       std::vector<double>(static_cast<size_t>(H), 0.0));
    std::vector<std::vector<double>> c = h;
    std::vector<double> x;
    for (int r = 0; r < shot.rounds; ++r) {
        x.assign(static_cast<size_t>(cfg.input_dim), 0.0);
        for (int j = 0; j < cfg.input_dim; ++j) {
            x[static_cast<size_t>(j)] =
                static_cast<double>(shot.per_round[static_cast<size_t>(r * cfg.input_dim + j)]);
        }
        for (int l = 0; l < cfg.n_lstm; ++l) {
            const LstmLayer& layer = lstm[static_cast<size_t>(l)];
            const std::vector<double>& in = l == 0 ? x : h[static_cast<size_t>(l - 1)];
            std::vector<double> gates(static_cast<size_t>(4 * H), 0.0);
            for (int g = 0; g < 4 * H; ++g) {
                double acc = layer.b(g);
                for (size_t j = 0; j < in.size(); ++j) {
                    acc += layer.wx(g, static_cast<Eigen::Index>(j)) * in[j];
                }
                for (int j = 0; j < H; ++j) {
                    acc += layer.wh(g, j) * h[static_cast<size_t>(l)][static_cast<size_t>(j)];
                }
                gates[static_cast<size_t>(g)] = acc;
            }
            for (int j = 0; j < H; ++j) {
                const double i_g = sigmoid(gates[static_cast<size_t>(j)]);
                const double f_g = sigmoid(gates[static_cast<size_t>(H + j)]);
                const double g_g = std::tanh(gates[static_cast<size_t>(2 * H + j)]);
                const double o_g = sigmoid(gates[static_cast<size_t>(3 * H + j)]);
                const double c_new = f_g * c[static_cast<size_t>(l)][static_cast<size_t>(j)] + i_g * g_g;
                c[static_cast<size_t>(l)][static_cast<size_t>(j)] = c_new;
                h[static_cast<size_t>(l)][static_cast<size_t>(j)] = o_g * std::tanh(c_new);
            }
        }
    }

    auto run_head = [&](const std::vector<DenseLayer>& head, const std::vector<double>& input) {
        std::vector<double> act = input;
        for (size_t li = 0; li < head.size(); ++li) {
            const DenseLayer& d = head[li];
            std::vector<double> next(static_cast<size_t>(d.w.rows()), 0.0);
            for (Eigen::Index i = 0; i < d.w.rows(); ++i) {
                double acc = d.b(i);
                for (Eigen::Index j = 0; j < d.w.cols(); ++j) {
                    acc += d.w(i, j) * act[static_cast<size_t>(j)];
                }
                next[static_cast<size_t>(i)] = li + 1 < head.size() ? std::max(acc, 0.0) : acc;
            }
            act = std::move(next);
        }
        return act[0];
    };

    std::vector<double> top = h[static_cast<size_t>(cfg.n_lstm - 1)];
    std::vector<double> main_in = top;
    for (int j = 0; j < cfg.final_dim; ++j) {
        main_in.push_back(static_cast<double>(shot.final_feats[static_cast<size_t>(j)]));
    }
    ForwardResult res;
    res.logit_main = Vector::Constant(1, run_head(main_head, main_in));
    res.p_main = Vector::Constant(1, sigmoid(res.logit_main(0)));
    if (cfg.has_aux) {
        res.logit_aux = Vector::Constant(1, run_head(aux_head, top));
        res.p_aux = Vector::Constant(1, sigmoid(res.logit_aux(0)));
    }
    return res;
}

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& rows) {
    const auto r = rows.size();
    const auto c = r > 0 ? rows[0].size() : 0;
    Matrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < c; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
        }
    }
    return m;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

Vector vector_from_json(const json& arr) {
    Vector v(static_cast<Eigen::Index>(arr.size()));
    for (size_t i = 0; i < arr.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
    }
    return v;
}

}  // namespace

void DecoderModel::save(const std::string& path) const {
    json j;
    j["schema_version"] = 1;
    j["config"] = {
        {"kind", cfg.kind == qec::ExperimentKind::memory ? "memory" : "stability"},
        {"mode", cfg.mode == ReadoutMode::three_level ? "3ro" : "2ro"},
        {"n_lstm", cfg.n_lstm},
        {"d_lstm", cfg.d_lstm},
        {"n_eval", cfg.n_eval},
        {"d_eval", cfg.d_eval},
        {"input_dim", cfg.input_dim},
        {"final_dim", cfg.final_dim},
        {"has_aux", cfg.has_aux},
    };
    json layers = json::array();
    for (const auto& l : lstm) {
        layers.push_back({{"wx", matrix_to_json(l.wx)},
                          {"wh", matrix_to_json(l.wh)},
                          {"b", vector_to_json(l.b)}});
    }
    j["lstm"] = std::move(layers);
    auto head_json = [&](const std::vector<DenseLayer>& head) {
        json out = json::array();
        for (const auto& d : head) {
            out.push_back({{"w", matrix_to_json(d.w)}, {"b", vector_to_json(d.b)}});
        }
        return out;
    };
    j["main_head"] = head_json(main_head);
    if (cfg.has_aux) {
        j["aux_head"] = head_json(aux_head);
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << j.dump() << "\n";
}

DecoderModel DecoderModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open checkpoint " + path);
    }
    json j;
    in >> j;
    if (j.at("schema_version").get<int>() != 1) {
        throw std::runtime_error("unsupported checkpoint schema version in " + path);
    }
    const json& c = j.at("config");
    ModelConfig cfg;
    cfg.kind = c.at("kind").get<std::string>() == "memory" ? qec::ExperimentKind::memory
                                                           : qec::ExperimentKind::stability;
    cfg.mode = c.at("mode").get<std::string>() == "3ro" ? ReadoutMode::three_level
                                                        : ReadoutMode::two_level;
    cfg.n_lstm = c.at("n_lstm").get<int>();
    cfg.d_lstm = c.at("d_lstm").get<int>();
    cfg.n_eval = c.at("n_eval").get<int>();
    cfg.d_eval = c.at("d_eval").get<int>();
    cfg.input_dim = c.at("input_dim").get<int>();
    cfg.final_dim = c.at("final_dim").get<int>();
    cfg.has_aux = c.at("has_aux").get<bool>();

    DecoderModel model(cfg);
    const json& layers = j.at("lstm");
    for (size_t l = 0; l < layers.size(); ++l) {
        model.lstm[l].wx = matrix_from_json(layers[l].at("wx"));
        model.lstm[l].wh = matrix_from_json(layers[l].at("wh"));
        model.lstm[l].b = vector_from_json(layers[l].at("b"));
    }
    auto head_load = [&](const json& arr, std::vector<DenseLayer>& head) {
        for (size_t i = 0; i < arr.size(); ++i) {
            head[i].w = matrix_from_json(arr[i].at("w"));
            head[i].b = vector_from_json(arr[i].at("b"));
        }
    };
    head_load(j.at("main_head"), model.main_head);
    if (cfg.has_aux) {
        head_load(j.at("aux_head"), model.aux_head);
    }
    return model;
}

}  // namespace lruqec::nn
