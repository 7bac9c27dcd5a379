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
#include <stdexcept>

#include "lruqec/nn/decoder_model.hpp"

namespace lruqec::nn {

namespace {

Eigen::ArrayXXd sigmoid_array(const Eigen::ArrayXXd& z) {
    return 1.0 / (1.0 + (-z).exp());
}

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

struct LayerTape {
    std::vector<Matrix> i, f, g, o, c, tanh_c, h;
};

struct HeadTape {
    // acts[0] = input, acts[k] = post-ReLU output of hidden layer k.
    std::vector<Matrix> acts;
    Vector logits;
};

void head_forward(const std::vector<DenseLayer>& head, const Matrix& input, HeadTape& tape) {
    tape.acts.clear();
    tape.acts.push_back(input);
    Matrix a = input;
    for (size_t li = 0; li + 1 < head.size(); ++li) {
        Matrix z = a * head[li].w.transpose();
        z.rowwise() += head[li].b.transpose();
        a = z.array().max(0.0);
        tape.acts.push_back(a);
    }
    const DenseLayer& out = head.back();
    Matrix z = a * out.w.transpose();
    z.rowwise() += out.b.transpose();
    tape.logits = z.col(0);
}

/// Returns the gradient w.r.t. the head input; accumulates weight gradients.
Matrix head_backward(const std::vector<DenseLayer>& head, const HeadTape& tape,
                     const Vector& dlogit, std::vector<DenseLayer>& grad) {
    Matrix da = dlogit;
    for (int li = static_cast<int>(head.size()) - 1; li >= 0; --li) {
        const Matrix& input = tape.acts[static_cast<size_t>(li)];
        grad[static_cast<size_t>(li)].w.noalias() += da.transpose() * input;
        grad[static_cast<size_t>(li)].b += da.colwise().sum().transpose();
        Matrix dprev = da * head[static_cast<size_t>(li)].w;
        if (li > 0) {
            dprev = (input.array() > 0.0).cast<double>() * dprev.array();
        }
        da = std::move(dprev);
    }
    return da;
}

struct StackResult {
    std::vector<LayerTape> tapes;
    Matrix h_last;  // B x H, top layer after the last round
};

StackResult stack_forward(const DecoderModel& model, const Batch& batch, bool keep_tape) {
    const int B = batch.size();
    const int H = model.cfg.d_lstm;
    const int L = model.cfg.n_lstm;
    const int R = static_cast<int>(batch.rounds.size());

    StackResult res;
    res.tapes.resize(static_cast<size_t>(L));
    if (keep_tape) {
        for (auto& t : res.tapes) {
            t.i.reserve(static_cast<size_t>(R));
            t.f.reserve(static_cast<size_t>(R));
            t.g.reserve(static_cast<size_t>(R));
            t.o.reserve(static_cast<size_t>(R));
            t.c.reserve(static_cast<size_t>(R));
            t.tanh_c.reserve(static_cast<size_t>(R));
            t.h.reserve(static_cast<size_t>(R));
        }
    }

    std::vector<Matrix> h_state(static_cast<size_t>(L), Matrix::Zero(B, H));
    std::vector<Matrix> c_state(static_cast<size_t>(L), Matrix::Zero(B, H));
    Matrix gates;
    for (int r = 0; r < R; ++r) {
        const Matrix* x = &batch.rounds[static_cast<size_t>(r)];
        for (int l = 0; l < L; ++l) {
            const LstmLayer& layer = model.lstm[static_cast<size_t>(l)];
            gates.noalias() = (*x) * layer.wx.transpose();
            gates.noalias() += h_state[static_cast<size_t>(l)] * layer.wh.transpose();
            gates.rowwise() += layer.b.transpose();

            Matrix gi = sigmoid_array(gates.leftCols(H).array());
            Matrix gf = sigmoid_array(gates.middleCols(H, H).array());
            Matrix gg = gates.middleCols(2 * H, H).array().tanh();
            Matrix go = sigmoid_array(gates.rightCols(H).array());
            Matrix c_new = gf.array() * c_state[static_cast<size_t>(l)].array() + gi.array() * gg.array();
            Matrix tanh_c = c_new.array().tanh();
            Matrix h_new = go.array() * tanh_c.array();

            c_state[static_cast<size_t>(l)] = c_new;
            h_state[static_cast<size_t>(l)] = h_new;
            if (keep_tape) {
                LayerTape& t = res.tapes[static_cast<size_t>(l)];
                t.i.push_back(std::move(gi));
                t.f.push_back(std::move(gf));
                t.g.push_back(std::move(gg));
                t.o.push_back(std::move(go));
                t.c.push_back(std::move(c_new));
                t.tanh_c.push_back(std::move(tanh_c));
                t.h.push_back(h_state[static_cast<size_t>(l)]);
            }
            x = &h_state[static_cast<size_t>(l)];
        }
    }
    res.h_last = h_state[static_cast<size_t>(L - 1)];
    return res;
}

Matrix main_head_input(const DecoderModel& model, const Batch& batch, const Matrix& h_last) {
    if (model.cfg.final_dim == 0) {
        return h_last;
    }
    Matrix input(h_last.rows(), h_last.cols() + model.cfg.final_dim);
    input.leftCols(h_last.cols()) = h_last;
    input.rightCols(model.cfg.final_dim) = batch.final_feats;
    return input;
}

LossTerms loss_from_logits(const Vector& logit_main, const Vector& logit_aux, const Vector& y,
                           double aux_weight, bool has_aux) {
    LossTerms terms;
    const int B = static_cast<int>(y.size());
    for (int b = 0; b < B; ++b) {
        terms.main += softplus(logit_main(b)) - y(b) * logit_main(b);
        if (has_aux) {
            terms.aux += softplus(logit_aux(b)) - y(b) * logit_aux(b);
        }
    }
    terms.main /= B;
    terms.aux /= B;
    terms.total = terms.main + (has_aux ? aux_weight * terms.aux : 0.0);
    if (!std::isfinite(terms.total)) {
        throw std::runtime_error("non-finite loss");
    }
    return terms;
}

}  // namespace

Batch make_batch(const EncodedDataset& data, const uint32_t* indices, int count) {
    if (count <= 0) {
        throw std::invalid_argument("empty batch");
    }
    const int R = data.shots[indices[0]].rounds;
    const int F = data.spec.per_round;
    const int FD = data.spec.final_dim;
    Batch batch;
    batch.rounds.assign(static_cast<size_t>(R), Matrix(count, F));
    batch.final_feats = Matrix(count, FD);
    batch.labels = Vector(count);
    for (int b = 0; b < count; ++b) {
        const EncodedShot& shot = data.shots[indices[b]];
        if (shot.rounds != R) {
            throw std::invalid_argument("batch mixes different round counts");
        }
        for (int r = 0; r < R; ++r) {
            for (int j = 0; j < F; ++j) {
                batch.rounds[static_cast<size_t>(r)](b, j) =
                    static_cast<double>(shot.per_round[static_cast<size_t>(r * F + j)]);
            }
        }
        for (int j = 0; j < FD; ++j) {
            batch.final_feats(b, j) = static_cast<double>(shot.final_feats[static_cast<size_t>(j)]);
        }
        batch.labels(b) = static_cast<double>(shot.label);
    }
    return batch;
}

ForwardResult DecoderModel::forward(const Batch& batch) const {
    const StackResult stack = stack_forward(*this, batch, /*keep_tape=*/false);
    HeadTape main_tape;
    head_forward(main_head, main_head_input(*this, batch, stack.h_last), main_tape);
    ForwardResult res;
    res.logit_main = main_tape.logits;
    res.p_main = sigmoid_array(main_tape.logits.array());
    if (cfg.has_aux) {
        HeadTape aux_tape;
        head_forward(aux_head, stack.h_last, aux_tape);
        res.logit_aux = aux_tape.logits;
        res.p_aux = sigmoid_array(aux_tape.logits.array());
    }
    return res;
}

LossTerms batch_loss(const DecoderModel& model, const Batch& batch, double aux_weight) {
    const ForwardResult res = model.forward(batch);
    return loss_from_logits(res.logit_main, res.logit_aux, batch.labels, aux_weight,
                            model.cfg.has_aux);
}

LossTerms forward_backward(const DecoderModel& model, const Batch& batch, double aux_weight,
                           DecoderModel& grad) {
    const int B = batch.size();
    const int H = model.cfg.d_lstm;
    const int L = model.cfg.n_lstm;
    const int R = static_cast<int>(batch.rounds.size());

    StackResult stack = stack_forward(model, batch, /*keep_tape=*/true);
    HeadTape main_tape;
    head_forward(model.main_head, main_head_input(model, batch, stack.h_last), main_tape);
    HeadTape aux_tape;
    if (model.cfg.has_aux) {
        head_forward(model.aux_head, stack.h_last, aux_tape);
    }
    const LossTerms terms = loss_from_logits(main_tape.logits, aux_tape.logits, batch.labels,
                                             aux_weight, model.cfg.has_aux);

    // d loss / d logit = (sigmoid(logit) - y) / B.
    Vector dlogit_main =
        (sigmoid_array(main_tape.logits.array()) - batch.labels.array()).matrix() / B;
    const Matrix dmain_in = head_backward(model.main_head, main_tape, dlogit_main, grad.main_head);
    Matrix dh_last = dmain_in.leftCols(H);
    if (model.cfg.has_aux) {
        Vector dlogit_aux =
            aux_weight *
            (sigmoid_array(aux_tape.logits.array()) - batch.labels.array()).matrix() / B;
        dh_last += head_backward(model.aux_head, aux_tape, dlogit_aux, grad.aux_head);
    }

    // Backpropagation through time over the stacked LSTM layers.
    std::vector<Matrix> dh(static_cast<size_t>(L), Matrix::Zero(B, H));
    std::vector<Matrix> dc(static_cast<size_t>(L), Matrix::Zero(B, H));
    dh[static_cast<size_t>(L - 1)] = dh_last;
    Matrix dgates(B, 4 * H);
    const Matrix zeros = Matrix::Zero(B, H);
    for (int r = R - 1; r >= 0; --r) {
        for (int l = L - 1; l >= 0; --l) {
            const LayerTape& t = stack.tapes[static_cast<size_t>(l)];
            const Matrix& gi = t.i[static_cast<size_t>(r)];
            const Matrix& gf = t.f[static_cast<size_t>(r)];
            const Matrix& gg = t.g[static_cast<size_t>(r)];
            const Matrix& go = t.o[static_cast<size_t>(r)];
            const Matrix& tanh_c = t.tanh_c[static_cast<size_t>(r)];
            const Matrix& c_prev = r > 0 ? t.c[static_cast<size_t>(r - 1)] : zeros;
            const Matrix& h_prev = r > 0 ? t.h[static_cast<size_t>(r - 1)] : zeros;
            const Matrix& x = l > 0 ? stack.tapes[static_cast<size_t>(l - 1)].h[static_cast<size_t>(r)]
                                    : batch.rounds[static_cast<size_t>(r)];

            Matrix& dh_l = dh[static_cast<size_t>(l)];
            Matrix& dc_l = dc[static_cast<size_t>(l)];
            dc_l.array() += dh_l.array() * go.array() * (1.0 - tanh_c.array().square());

            dgates.leftCols(H) =
                (dc_l.array() * gg.array() * gi.array() * (1.0 - gi.array())).matrix();
            dgates.middleCols(H, H) =
                (dc_l.array() * c_prev.array() * gf.array() * (1.0 - gf.array())).matrix();
            dgates.middleCols(2 * H, H) =
                (dc_l.array() * gi.array() * (1.0 - gg.array().square())).matrix();
            dgates.rightCols(H) =
                (dh_l.array() * tanh_c.array() * go.array() * (1.0 - go.array())).matrix();

            LstmLayer& g_l = grad.lstm[static_cast<size_t>(l)];
            g_l.wx.noalias() += dgates.transpose() * x;
            g_l.wh.noalias() += dgates.transpose() * h_prev;
            g_l.b += dgates.colwise().sum().transpose();

            dc_l = (dc_l.array() * gf.array()).matrix();
            dh_l.noalias() = dgates * model.lstm[static_cast<size_t>(l)].wh;
            if (l > 0) {
                dh[static_cast<size_t>(l - 1)].noalias() +=
                    dgates * model.lstm[static_cast<size_t>(l)].wx;
            }
        }
    }
    return terms;
}

}  // namespace lruqec::nn
