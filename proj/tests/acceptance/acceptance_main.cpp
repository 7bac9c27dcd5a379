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

// Acceptance suite: one scenario per end-to-end requirement, run as
//   acceptance <n>       (single criterion)
//   acceptance           (all twelve)
// Each criterion prints exactly one PASS/FAIL line. The later scenarios
// regenerate datasets and train decoders at full desk scale and take hours.

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lruqec/analysis/ibu.hpp"
#include "lruqec/analysis/postselect.hpp"
#include "lruqec/analysis/sweep.hpp"
#include "lruqec/lru/cma_es.hpp"
#include "lruqec/lru/landscape.hpp"
#include "lruqec/nn/decode.hpp"
#include "lruqec/nn/train.hpp"
#include "lruqec/qec/dataset.hpp"
#include "lruqec/qec/leakage.hpp"
#include "support/lindblad_dense.hpp"

using namespace lruqec;

namespace {

int g_threads = 2;

struct Gate {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) {
                detail += "; ";
            }
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += what;
    }
};

// --- 1: CZ leakage block unitarity and limits ------------------------------

bool criterion_1(Gate& gate) {
    Rng rng(1);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double l1 = 0.25 * rng.uniform();
        Instruction op = Instruction::cz_gate(0, 1, CZSpec{l1});
        const testsupport::CMat u = testsupport::instruction_unitary(2, op);
        const testsupport::CMat err = u.adjoint() * u - testsupport::CMat::Identity(9, 9);
        worst = std::max(worst, err.cwiseAbs().maxCoeff());
    }
    gate.require(worst <= 1e-12, "U^dag U deviates from identity by " + std::to_string(worst));

    QutritRegister pure(2);
    pure.apply_ge_rotation(0, 0.0, Rng::kPi);
    pure.apply_ge_rotation(1, 0.0, Rng::kPi);
    const Complex a11 = pure.amp(4);
    pure.apply_cz(0, 1, CZSpec{0.0});
    gate.require(std::abs(pure.amp(4) + a11) < 1e-12, "l1=0 is not a pure CZ");

    QutritRegister full(2);
    full.apply_ge_rotation(0, 0.0, Rng::kPi);
    full.apply_ge_rotation(1, 0.0, Rng::kPi);
    full.apply_cz(0, 1, CZSpec{0.25});
    gate.require(std::abs(std::norm(full.amp(2)) - 1.0) < 1e-12,
                 "l1=0.25 does not fully transfer |11> to |02>");
    std::ostringstream os;
    os << "max |U^dag U - I| = " << worst;
    gate.note(os.str());
    return gate.ok;
}

// --- 2: trajectory-averaged decay against analytic exponentials ------------

bool criterion_2(Gate& gate) {
    const NoiseModel nm = NoiseModel::lru_calibration_defaults(1);
    const int n = 10000;
    const double expected = std::exp(-1.0);
    const double se = std::sqrt(expected * (1.0 - expected) / n);

    int survived_e = 0;
#pragma omp parallel for reduction(+ : survived_e) num_threads(g_threads)
    for (int i = 0; i < n; ++i) {
        QutritRegister st(1);
        st.apply_ge_rotation(0, 0.0, Rng::kPi);
        Rng rng = Rng::stream(1001, static_cast<uint64_t>(i));
        apply_decoherence(st, {0}, nm.qubits[0].t1_us * 1e3, nm, rng);
        survived_e += st.level_populations(0)[1] > 0.99 ? 1 : 0;
    }
    int survived_f = 0;
#pragma omp parallel for reduction(+ : survived_f) num_threads(g_threads)
    for (int i = 0; i < n; ++i) {
        QutritRegister st(1);
        st.apply_ge_rotation(0, 0.0, Rng::kPi);
        st.apply_ef_rotation(0, Rng::kPi);
        Rng rng = Rng::stream(2002, static_cast<uint64_t>(i));
        apply_decoherence(st, {0}, nm.qubits[0].t1_us * 1e3 / 2.0, nm, rng);
        survived_f += st.level_populations(0)[2] > 0.99 ? 1 : 0;
    }
    const double pe = survived_e / double(n);
    const double pf = survived_f / double(n);
    gate.require(std::abs(pe - expected) <= 3.0 * se, "P(e) at T1 deviates beyond 3 sigma");
    gate.require(std::abs(pf - expected) <= 3.0 * se, "P(f) at T1/2 deviates beyond 3 sigma");
    std::ostringstream os;
    os << "P(e)@T1 = " << pe << ", P(f)@T1/2 = " << pf << ", expected " << expected << " +- "
       << 3.0 * se;
    gate.note(os.str());
    return gate.ok;
}

// --- 3: Monte-Carlo populations against the dense Lindblad oracle ----------

Circuit two_qutrit_scenario() {
    Circuit c;
    c.n_qutrits = 2;
    Moment prep;
    prep.ops.push_back(Instruction::rot_ge(0, 0.3, 1.2));
    prep.ops.push_back(Instruction::rot_ge(1, Rng::kPi / 2.0, Rng::kPi / 2.0));
    c.append(std::move(prep));
    c.append(Instruction::rot_ef(1, 0.7));
    c.append(Instruction::cz_gate(0, 1, CZSpec{0.08}));
    c.append(Instruction::idle_op({0, 1}, 3000.0));
    c.append(Instruction::cz_gate(0, 1, CZSpec{0.08}));
    c.append(Instruction::idle_op({0, 1}, 2000.0));
    return c;
}

bool criterion_3(Gate& gate) {
    const Circuit circuit = two_qutrit_scenario();
    const NoiseModel nm = NoiseModel::lru_calibration_defaults(2);
    const testsupport::CMat rho = testsupport::run_circuit_dense(circuit, nm, 0.25);

    const int n = 10000;
    std::vector<double> sum(9, 0.0), sum2(9, 0.0);
    ShotPlan plan(circuit, nm);
#pragma omp parallel num_threads(g_threads)
    {
        std::vector<double> local_sum(9, 0.0), local_sum2(9, 0.0);
#pragma omp for nowait
        for (int i = 0; i < n; ++i) {
            Rng rng = Rng::stream(3003, static_cast<uint64_t>(i));
            QutritRegister st(2);
            plan.run(rng, &st);
            for (int b = 0; b < 9; ++b) {
                const double p = std::norm(st.amp(static_cast<size_t>(b)));
                local_sum[static_cast<size_t>(b)] += p;
                local_sum2[static_cast<size_t>(b)] += p * p;
            }
        }
#pragma omp critical
        for (int b = 0; b < 9; ++b) {
            sum[static_cast<size_t>(b)] += local_sum[static_cast<size_t>(b)];
            sum2[static_cast<size_t>(b)] += local_sum2[static_cast<size_t>(b)];
        }
    }
    double worst_z = 0.0;
    for (int b = 0; b < 9; ++b) {
        const double mean = sum[static_cast<size_t>(b)] / n;
        const double var =
            std::max(sum2[static_cast<size_t>(b)] / n - mean * mean, 0.0) * n / (n - 1.0);
        const double se = std::max(std::sqrt(var / n), 1e-5);
        const double exact = rho(b, b).real();
        worst_z = std::max(worst_z, std::abs(mean - exact) / se);
    }
    gate.require(worst_z <= 3.0, "population deviates from the density-matrix oracle");
    std::ostringstream os;
    os << "worst |z| over 9 populations = " << worst_z << " (limit 3)";
    gate.note(os.str());
    return gate.ok;
}

// --- 4: decoder gradients against central finite differences ---------------

bool check_gradients(const nn::ModelConfig& base, double aux_weight, uint64_t seed, Gate& gate,
                     double* worst_out) {
    nn::ModelConfig cfg = base;
    cfg.n_lstm = 2;
    cfg.d_lstm = 5;
    cfg.n_eval = 2;
    cfg.d_eval = 4;
    nn::DecoderModel model(cfg);
    model.init_weights(seed);

    nn::EncodedDataset data;
    data.spec = nn::FeatureSpec::make(cfg.kind, cfg.mode);
    Rng rng(seed ^ 0xF00D);
    for (int i = 0; i < 6; ++i) {
        nn::EncodedShot s;
        s.rounds = 4;
        s.per_round.resize(static_cast<size_t>(4 * data.spec.per_round));
        for (auto& v : s.per_round) {
            v = rng.bernoulli(0.35) ? 1 : 0;
        }
        s.final_feats.resize(static_cast<size_t>(data.spec.final_dim));
        for (auto& v : s.final_feats) {
            v = rng.bernoulli(0.5) ? 1 : 0;
        }
        s.label = rng.bernoulli(0.5) ? 1 : 0;
        data.shots.push_back(std::move(s));
    }
    std::vector<uint32_t> idx = {0, 1, 2, 3, 4, 5};
    const nn::Batch batch = nn::make_batch(data, idx.data(), 6);
    nn::DecoderModel grad(cfg);
    grad.set_zero();
    nn::forward_backward(model, batch, aux_weight, grad);

    auto params = model.param_ptrs();
    auto grads = grad.param_ptrs();
    const auto sizes = model.param_sizes();
    const double h = 1e-6;
    const double l0 = nn::batch_loss(model, batch, aux_weight).total;
    bool all_ok = true;
    int kinks = 0;
    int total = 0;
    for (size_t k = 0; k < params.size(); ++k) {
        for (int i = 0; i < sizes[k]; ++i) {
            ++total;
            const double orig = params[k][i];
            params[k][i] = orig + h;
            const double lp = nn::batch_loss(model, batch, aux_weight).total;
            params[k][i] = orig - h;
            const double lm = nn::batch_loss(model, batch, aux_weight).total;
            params[k][i] = orig;
            const double fd = (lp - lm) / (2.0 * h);
            const double g = grads[k][i];
            const double tol = 1e-4 * std::max(std::abs(fd), std::abs(g)) + 1e-7;
            if (std::abs(fd - g) > tol) {
                // Central differences are invalid across a ReLU kink. If one
                // one-sided difference reproduces the analytic gradient, the
                // kink lies on the other side of the evaluation point;
                // exclude the parameter and bound how often this happens.
                const double d_plus = (lp - l0) / h;
                const double d_minus = (l0 - lm) / h;
                if (std::min(std::abs(d_plus - g), std::abs(d_minus - g)) <= 10.0 * tol) {
                    ++kinks;
                    continue;
                }
                all_ok = false;
            }
            // Report the relative error where finite differences resolve it:
            // the FD noise floor is ~1e-10, so magnitudes below 1e-5 cannot
            // witness a 1e-4 relative comparison.
            if (std::abs(fd) + std::abs(g) > 1e-5) {
                *worst_out = std::max(*worst_out,
                                      std::abs(fd - g) / (std::abs(fd) + std::abs(g)));
            }
        }
    }
    gate.require(all_ok, "a parameter's gradient disagrees with finite differences");
    // One borderline unit marks its whole fan-in, so allow a couple of
    // units' worth of exclusions.
    gate.require(kinks <= total / 20, "too many kink exclusions for a trustworthy check");
    return all_ok;
}

bool criterion_4(Gate& gate) {
    double worst = 0.0;
    check_gradients(nn::ModelConfig::memory_default(nn::ReadoutMode::three_level), 0.5, 99, gate,
                    &worst);
    check_gradients(nn::ModelConfig::stability_default(nn::ReadoutMode::three_level), 0.0, 77,
                    gate, &worst);
    std::ostringstream os;
    os << "worst resolvable relative error = " << worst << " (limit 1e-4)";
    gate.require(worst < 1e-4, "relative gradient error above 1e-4");
    gate.note(os.str());
    return gate.ok;
}

// --- 5: fit recovery on binomially sampled synthetic curves ----------------

bool criterion_5(Gate& gate) {
    Rng rng(55);
    {
        const double eps_true = 0.02;
        std::vector<analysis::PlPoint> curve;
        for (int r = 5; r <= 41; r += 4) {
            const double p = 0.5 - 0.5 * std::pow(1.0 - 2.0 * eps_true, r);
            analysis::PlPoint pt;
            pt.rounds = r;
            pt.shots = 10000;
            for (int i = 0; i < 10000; ++i) {
                pt.failures += rng.bernoulli(p) ? 1 : 0;
            }
            pt.p = pt.failures / 10000.0;
            pt.sigma = std::max(std::sqrt(pt.p * (1 - pt.p) / 10000.0), 5e-5);
            curve.push_back(pt);
        }
        const analysis::FitResult fit = analysis::fit_memory(curve);
        std::ostringstream os;
        os << "memory: eps = " << fit.epsilon << " +- " << fit.epsilon_sigma << " (true 0.02)";
        gate.note(os.str());
        gate.require(std::abs(fit.epsilon - eps_true) <= 2.0 * fit.epsilon_sigma,
                     "memory epsilon off by more than 2 standard errors");
    }
    {
        const double gamma_true = 0.3, a_true = 0.5;
        std::vector<analysis::PlPoint> curve;
        for (int r = 10; r <= 40; r += 3) {
            const double p = a_true * std::exp(-gamma_true * r);
            analysis::PlPoint pt;
            pt.rounds = r;
            pt.shots = 10000;
            for (int i = 0; i < 10000; ++i) {
                pt.failures += rng.bernoulli(p) ? 1 : 0;
            }
            pt.p = pt.failures / 10000.0;
            pt.sigma = std::max(std::sqrt(pt.p * (1 - pt.p) / 10000.0), 5e-5);
            curve.push_back(pt);
        }
        const analysis::FitResult fit = analysis::fit_stability(curve);
        std::ostringstream os;
        os << "stability: gamma = " << fit.gamma << " +- " << fit.gamma_sigma << ", A = "
           << fit.amplitude << " +- " << fit.amplitude_sigma << " (true 0.3, 0.5)";
        gate.note(os.str());
        gate.require(std::abs(fit.gamma - gamma_true) <= 2.0 * fit.gamma_sigma,
                     "gamma off by more than 2 standard errors");
        gate.require(std::abs(fit.amplitude - a_true) <= 2.0 * fit.amplitude_sigma,
                     "A off by more than 2 standard errors");
    }
    return gate.ok;
}

// --- 6: iterative Bayesian unfolding recovery -------------------------------

bool criterion_6(Gate& gate) {
    const auto response = AssignmentMatrix::from_rows(
        {{{0.94, 0.05, 0.01}, {0.06, 0.90, 0.04}, {0.02, 0.07, 0.91}}});
    const std::array<double, 3> truth{0.7, 0.2, 0.1};
    Rng rng(66);
    std::array<double, 3> counts{0.0, 0.0, 0.0};
    for (long i = 0; i < 1000000; ++i) {
        const int s = rng.sample_discrete(truth.data(), 3, 1.0);
        counts[static_cast<size_t>(response.sample(s, rng))] += 1.0;
    }
    const auto out = analysis::ibu_correct(counts, response, 10);
    double worst = 0.0;
    for (int s = 0; s < 3; ++s) {
        worst = std::max(worst, std::abs(out[static_cast<size_t>(s)] - truth[static_cast<size_t>(s)]));
    }
    gate.require(worst < 0.005, "unfolded population off by 0.005 or more");
    std::ostringstream os;
    os << "worst component error = " << worst << " (limit 0.005)";
    gate.note(os.str());
    return gate.ok;
}

// --- 7: memory leakage sweep ordering (desk-scale Fig. 4d analogue) --------

analysis::SweepConfig memory_sweep_config(uint64_t seed) {
    analysis::SweepConfig sc;
    sc.kind = qec::ExperimentKind::memory;
    sc.axis = analysis::SweepAxis::l_cz;
    sc.grid = {0.01, 0.036, 0.049};
    sc.memory_plan.train_flip_vectors = 658;  // 8 x 19 x 658 > 1e5 training shots
    sc.memory_plan.val_flip_vectors = 66;
    sc.memory_plan.shots_per_test_spec = 112;  // 8 x 18 x 112 > 1e4 test shots
    sc.train = nn::TrainConfig::memory_default();
    sc.train.max_epochs = 30;
    sc.train.patience = 8;
    sc.ensemble_size = 1;
    sc.seed = seed;
    sc.threads = g_threads;
    return sc;
}

const analysis::SweepRow& find_row(const std::vector<analysis::SweepRow>& rows, double value,
                                   bool lru, nn::ReadoutMode mode) {
    for (const auto& r : rows) {
        if (r.axis_value == value && r.variant.lru_on == lru && r.variant.mode == mode) {
            return r;
        }
    }
    throw std::logic_error("missing sweep row");
}

bool criterion_7(Gate& gate) {
    const analysis::SweepConfig sc = memory_sweep_config(7001);
    const auto rows = analysis::sweep_report(sc);

    std::ostringstream table;
    for (const double v : sc.grid) {
        const auto& best = find_row(rows, v, true, nn::ReadoutMode::three_level);
        table << " L=" << v << ":";
        for (const auto& var : sc.variants) {
            const auto& row = find_row(rows, v, var.lru_on, var.mode);
            table << " " << (var.lru_on ? "LRU" : "noLRU")
                  << (var.mode == nn::ReadoutMode::three_level ? "+3RO" : "+2RO") << "="
                  << row.fit.epsilon << "(" << row.fit.epsilon_sigma << ")";
            if (&row == &best) {
                continue;
            }
            gate.require(best.fit.epsilon <= row.fit.epsilon,
                         "3RO+LRU is not the lowest epsilon at L=" + std::to_string(v));
            const double sigma_diff = std::hypot(best.fit.epsilon_sigma, row.fit.epsilon_sigma);
            gate.require(row.fit.epsilon - best.fit.epsilon > -2.0 * sigma_diff,
                         "a variant significantly beats 3RO+LRU at L=" + std::to_string(v));
        }
        gate.require(best.fit.epsilon <= best.mv_fit.epsilon + 2.0 * best.fit.epsilon_sigma,
                     "ensemble does not reach the majority-vote baseline at L=" +
                         std::to_string(v));
        table << " MV=" << best.mv_fit.epsilon;
    }
    // Without the LRU the logical error rate grows with the injected leakage.
    for (const nn::ReadoutMode mode : {nn::ReadoutMode::three_level, nn::ReadoutMode::two_level}) {
        double prev = -1.0;
        for (const double v : sc.grid) {
            const auto& row = find_row(rows, v, false, mode);
            gate.require(row.fit.epsilon > prev, "no-LRU epsilon not increasing with L_CZ");
            prev = row.fit.epsilon;
        }
    }
    gate.note(table.str());
    return gate.ok;
}

// --- 8: stability error-suppression factor vs leakage (Fig. 5d analogue) ---

bool criterion_8(Gate& gate) {
    analysis::SweepConfig sc;
    sc.kind = qec::ExperimentKind::stability;
    sc.axis = analysis::SweepAxis::l_cz;
    sc.grid = {0.012, 0.037, 0.076};
    sc.variants = {{true, nn::ReadoutMode::three_level}, {false, nn::ReadoutMode::two_level}};
    sc.stability_plan.shots_per_train_spec = 66;  // 16 x 38 x 66 = 40k shots
    sc.stability_plan.shots_per_val_spec = 6;
    sc.stability_plan.shots_per_test_spec = 26;
    sc.train = nn::TrainConfig::stability_default();
    sc.train.max_epochs = 25;
    sc.train.patience = 8;
    sc.ensemble_size = 1;
    sc.seed = 8001;
    sc.threads = g_threads;
    const auto rows = analysis::sweep_report(sc);

    // Weighted linear regression of gamma on the leakage rate (LRU arm).
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    std::ostringstream table;
    for (const double v : sc.grid) {
        const auto& row = find_row(rows, v, true, nn::ReadoutMode::three_level);
        const double w = 1.0 / (row.fit.gamma_sigma * row.fit.gamma_sigma);
        sw += w;
        swx += w * v;
        swy += w * row.fit.gamma;
        swxx += w * v * v;
        swxy += w * v * row.fit.gamma;
        table << " gammaLRU(" << v << ")=" << row.fit.gamma << "(" << row.fit.gamma_sigma << ")";
    }
    const double det = sw * swxx - swx * swx;
    const double slope = (sw * swxy - swx * swy) / det;
    const double slope_sigma = std::sqrt(sw / det);
    gate.require(std::abs(slope) <= 2.0 * slope_sigma,
                 "gamma with LRU has a slope inconsistent with 0 at 2 sigma");

    double prev = 1e9;
    double first_gamma = 0.0, first_sigma = 0.0, last_gamma = 0.0, last_sigma = 0.0;
    for (size_t i = 0; i < sc.grid.size(); ++i) {
        const auto& row = find_row(rows, sc.grid[i], false, nn::ReadoutMode::two_level);
        table << " gammaNoLRU(" << sc.grid[i] << ")=" << row.fit.gamma << "("
              << row.fit.gamma_sigma << ")";
        gate.require(row.fit.gamma < prev, "no-LRU gamma not monotonically decreasing");
        prev = row.fit.gamma;
        if (i == 0) {
            first_gamma = row.fit.gamma;
            first_sigma = row.fit.gamma_sigma;
        }
        if (i + 1 == sc.grid.size()) {
            last_gamma = row.fit.gamma;
            last_sigma = row.fit.gamma_sigma;
        }
    }
    gate.require(first_gamma - last_gamma > 2.0 * std::hypot(first_sigma, last_sigma),
                 "no-LRU gamma drop not significant");
    std::ostringstream os;
    os << "LRU slope = " << slope << " +- " << slope_sigma << ";" << table.str();
    gate.note(os.str());
    return gate.ok;
}

// --- 9: decoder cheating with and without random logical flips -------------

bool criterion_9(Gate& gate) {
    // Restricted |0>_L dataset: the four even-parity bitstrings.
    qec::MemoryPlan plan;
    plan.l1 = 0.0363;
    plan.lru_on = true;
    plan.bitstrings = {0, 3, 5, 6};
    plan.train_flip_vectors = 658;  // 4 x 19 x 658 = 50k shots
    plan.val_flip_vectors = 66;
    plan.shots_per_test_spec = 150;  // 4 x 18 x 150 = 10.8k shots
    const NoiseModel noise = NoiseModel::memory_defaults();

    nn::TrainConfig tc = nn::TrainConfig::memory_default();
    tc.max_epochs = 50;
    tc.patience = 12;

    std::ostringstream os;
    double p_inf[2] = {0.0, 0.0};
    double p_inf_sigma[2] = {0.0, 0.0};
    for (const bool with_flips : {false, true}) {
        qec::MemoryPlan p = plan;
        p.train_with_flips = with_flips;
        const qec::DatasetBundle bundle =
            qec::generate_memory_bundle(p, noise, with_flips ? 9102 : 9101, g_threads);
        const auto train_data = nn::encode_dataset(bundle.train, nn::ReadoutMode::three_level);
        const auto val_data = nn::encode_dataset(bundle.validation, nn::ReadoutMode::three_level);
        const auto test_data = nn::encode_dataset(bundle.test, nn::ReadoutMode::three_level);
        tc.seed = with_flips ? 42 : 41;
        const nn::TrainResult tr =
            nn::train(nn::ModelConfig::memory_default(nn::ReadoutMode::three_level), train_data,
                      val_data, tc);
        const nn::DecodeResult dec = nn::decode_dataset(tr.model, test_data);
        const auto curve = nn::logical_error_by_rounds(bundle.test, dec.success);
        const analysis::FitResult fit = analysis::fit_cheating(curve);
        p_inf[with_flips ? 1 : 0] = fit.p_inf;
        p_inf_sigma[with_flips ? 1 : 0] = fit.p_inf_sigma;
        os << (with_flips ? " with flips: " : " without flips: ") << "p_inf = " << fit.p_inf
           << " +- " << fit.p_inf_sigma;
    }
    gate.require(p_inf[0] + 3.0 * p_inf_sigma[0] < 0.45,
                 "plateau without flips not below 0.45 at 3 sigma (no cheating detected)");
    gate.require(std::abs(p_inf[1] - 0.5) <= 3.0 * p_inf_sigma[1],
                 "plateau with flips not consistent with 1/2");
    gate.note(os.str());
    return gate.ok;
}

// --- 10: post-selection hierarchy and kept-fraction decay -------------------

bool criterion_10(Gate& gate) {
    qec::MemoryPlan plan;
    plan.l1 = 0.0098;
    plan.lru_on = false;  // post-selection arms use the no-LRU dataset
    plan.train_flip_vectors = 658;
    plan.val_flip_vectors = 66;
    plan.shots_per_test_spec = 112;
    const NoiseModel noise = NoiseModel::memory_defaults();
    const qec::DatasetBundle bundle = qec::generate_memory_bundle(plan, noise, 10001, g_threads);

    const auto train_data = nn::encode_dataset(bundle.train, nn::ReadoutMode::two_level);
    const auto val_data = nn::encode_dataset(bundle.validation, nn::ReadoutMode::two_level);
    const auto test_data = nn::encode_dataset(bundle.test, nn::ReadoutMode::two_level);
    nn::TrainConfig tc = nn::TrainConfig::memory_default();
    tc.max_epochs = 30;
    tc.patience = 8;
    tc.seed = 1010;
    const nn::TrainResult tr = nn::train(
        nn::ModelConfig::memory_default(nn::ReadoutMode::two_level), train_data, val_data, tc);
    const nn::DecodeResult dec = nn::decode_dataset(tr.model, test_data);

    const auto no_ps_curve = nn::logical_error_by_rounds(bundle.test, dec.success);
    const analysis::FitResult no_ps = analysis::fit_memory(no_ps_curve);
    const analysis::PostselectionResult leak =
        analysis::postselect_leakage(bundle.test, dec.success);
    const analysis::PostselectionResult conf =
        analysis::postselect_confidence(bundle.test, dec.success, dec.p_out, leak.kept);

    gate.require(leak.pl_fit_valid && conf.pl_fit_valid, "post-selected fits unavailable");
    gate.require(conf.pl_fit.epsilon <= leak.pl_fit.epsilon,
                 "confidence PS does not beat leakage PS");
    gate.require(leak.pl_fit.epsilon <= no_ps.epsilon, "leakage PS does not beat no PS");
    gate.require(leak.kept_fit_valid && leak.kept_fit.r_squared > 0.99,
                 "kept fraction is not exponential (R^2 <= 0.99)");
    for (size_t i = 0; i < leak.kept.size() && i < conf.kept.size(); ++i) {
        gate.require(std::abs(conf.kept[i].fraction - leak.kept[i].fraction) <=
                         1.0 / std::max(1L, leak.kept[i].total),
                     "kept fractions not matched per round");
    }
    std::ostringstream os;
    os << "eps(no PS) = " << no_ps.epsilon << ", eps(PS leak) = " << leak.pl_fit.epsilon
       << ", eps(PS conf) = " << conf.pl_fit.epsilon << ", f-fit R^2 = "
       << leak.kept_fit.r_squared;
    gate.note(os.str());
    return gate.ok;
}

// --- 11: LRU drive landscape bands and CMA-ES calibration -------------------

bool criterion_11(Gate& gate) {
    lru::DeviceParams dev;
    dev.fock_cutoff = 45;  // the high-power rows push past the dispersive regime
    const lru::LRUPulseParams pulse;

    // (a) Rabi oscillations at zero resonator drive.
    {
        lru::LRUPulseParams rabi = pulse;
        rabi.resonator_amp_rad_ns = 0.0;
        rabi.transmon_freq_ghz = dev.omega_ef_ghz();
        rabi.transmon_amp_rad_ns = 0.08;
        rabi.t_delay_ns = 0.0;
        lru::TrajectoryOptions opt;
        opt.n_traj = 64;
        opt.seed = 1101;
        opt.n_threads = g_threads;
        const lru::LruRun run = lru::evolve_lru_level(dev, rabi, 1, opt);
        const double period = 2.0 * Rng::kPi / rabi.transmon_amp_rad_ns;
        double pmin = 1.0, pmax = 0.0;
        for (size_t i = 0; i < run.t_grid_ns.size(); ++i) {
            if (run.t_grid_ns[i] > period + 10.0) break;
            pmin = std::min(pmin, run.mean_pops[1][i][1]);
            pmax = std::max(pmax, run.mean_pops[1][i][1]);
        }
        gate.require(pmax - pmin > 0.5, "no Rabi oscillation at zero resonator drive");
        std::ostringstream os;
        os << "Rabi visibility = " << pmax - pmin;
        gate.note(os.str());
    }

    // (b) three-band structure over the amplitude landscape.
    {
        lru::LandscapeConfig lc;
        lc.axes = lru::LandscapeAxes::amp_amp;
        lc.x_values = {0.05, 0.098, 0.15};
        lc.y_values = {0.005, 0.02, 0.05, 0.09, 0.14, 0.21, 0.28, 0.34};
        lc.trajectories.n_traj = 128;
        lc.trajectories.seed = 1102;
        lc.trajectories.n_threads = g_threads;
        const lru::Landscape land = lru::sweep_landscape(dev, pulse, lc);
        const lru::AmplitudeBands bands = lru::analyze_bands(land, 0.9);
        gate.require(bands.working_lo >= 0, "no working band with removal >= 0.9");
        double working_best = 0.0;
        for (int i = bands.working_lo; i <= bands.working_hi && i >= 0; ++i) {
            working_best = std::max(working_best, bands.best_removal[static_cast<size_t>(i)]);
        }
        const double low_band = bands.best_removal.front();
        const double high_band = bands.best_removal.back();
        gate.require(low_band < 0.9, "low-amplitude band unexpectedly removes leakage");
        gate.require(high_band < working_best - 0.03,
                     "no degradation above the high-amplitude threshold");
        std::ostringstream os;
        os << "band best-removal low/working/high = " << low_band << "/" << working_best << "/"
           << high_band;
        gate.note(os.str());
    }

    // (c) t_delay trade-off: residual grows past its minimum; readout gains.
    {
        lru::DeviceParams dev20 = dev;
        dev20.fock_cutoff = 20;
        lru::LandscapeConfig lc;
        lc.axes = lru::LandscapeAxes::delay_only;
        lc.x_values = {0.0};
        lc.y_values = {20.0, 90.0, 153.0, 250.0, 330.0};
        lc.trajectories.n_traj = 256;
        lc.trajectories.seed = 1103;
        lc.trajectories.n_threads = g_threads;
        lc.noise_scale = lru::kDefaultReadoutNoiseScale;
        const lru::Landscape land = lru::sweep_landscape(dev20, pulse, lc);
        size_t arg_min = 0;
        for (size_t i = 1; i < land.points.size(); ++i) {
            if (land.points[i].residual_f < land.points[arg_min].residual_f) {
                arg_min = i;
            }
        }
        for (size_t i = arg_min + 1; i < land.points.size(); ++i) {
            gate.require(land.points[i].residual_f >=
                             land.points[i - 1].residual_f - 0.025,
                         "residual f population decreases past the minimum");
        }
        gate.require(land.points.back().residual_f >
                         land.points[arg_min].residual_f + 0.03,
                     "residual f population does not grow at long delays");
        gate.require(land.points.front().f_infidelity > land.points[2].f_infidelity,
                     "f assignment does not improve with t_delay");
        std::ostringstream os;
        os << "residual(t_delay) = ";
        for (const auto& pt : land.points) {
            os << pt.residual_f << " ";
        }
        gate.note(os.str());
    }

    // (d) CMA-ES improves the geometric-mean cost by at least 20%.
    {
        lru::DeviceParams dev20 = dev;
        dev20.fock_cutoff = 20;
        lru::LRUPulseParams initial;
        initial.transmon_freq_ghz = dev20.omega_ef_ghz();  // detuned starting guess
        initial.transmon_amp_rad_ns = 0.05;
        initial.resonator_amp_rad_ns = 0.12;
        initial.t_delay_ns = 40.0;
        lru::CalibrationConfig cc;
        cc.max_generations = 12;
        cc.n_traj = 48;
        cc.seed = 1104;
        cc.n_threads = g_threads;
        const lru::CalibrationResult res = lru::calibrate_cma(dev20, initial, cc);
        gate.require(res.best_cost <= 0.8 * res.initial_cost,
                     "calibration improves the cost by less than 20%");
        std::ostringstream os;
        os << "cost " << res.initial_cost << " -> " << res.best_cost << " in "
           << res.evaluations << " evaluations";
        gate.note(os.str());
    }
    return gate.ok;
}

// --- 12: conditional-oscillation leakage estimator ---------------------------

bool criterion_12(Gate& gate) {
    const NoiseModel pair = NoiseModel::lru_calibration_defaults(2);
    std::ostringstream os;
    for (const double l1 : {0.01, 0.02, 0.04}) {
        const qec::L1Estimate est =
            qec::estimate_l1_tilde(l1, pair, false, 19, 8192, 1200 + static_cast<uint64_t>(l1 * 1e4));
        os << " L1~(" << l1 << ") = " << est.l1_tilde << " +- " << est.sigma;
        gate.require(std::abs(est.l1_tilde - l1) <= 3.0 * est.sigma,
                     "coherent estimate off by more than 3 sigma at l1 = " + std::to_string(l1));
        for (uint64_t trial = 0; trial < 5; ++trial) {
                const qec::L1Estimate dec =
                qec::estimate_l1_tilde(l1, pair, true, 19, 8192, 7000 + trial * 13 +
                                                               static_cast<uint64_t>(l1 * 1e5));
            gate.require(dec.l1_tilde >= l1,
                         "decohered estimate fails the upper-bound property at l1 = " +
                             std::to_string(l1));
        }
    }
    gate.note(os.str());
    return gate.ok;
}

using CriterionFn = std::function<bool(Gate&)>;

struct Criterion {
    int number;
    const char* name;
    CriterionFn fn;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "cz leakage block unitarity and limits", criterion_1},
        {2, "trajectory decay vs analytic exponentials", criterion_2},
        {3, "monte-carlo vs dense lindblad populations", criterion_3},
        {4, "decoder gradients vs finite differences", criterion_4},
        {5, "fit recovery on sampled synthetic curves", criterion_5},
        {6, "iterative bayesian unfolding recovery", criterion_6},
        {7, "memory leakage sweep ordering", criterion_7},
        {8, "stability gamma vs leakage", criterion_8},
        {9, "decoder cheating plateaus", criterion_9},
        {10, "post-selection hierarchy", criterion_10},
        {11, "lru drive landscape and calibration", criterion_11},
        {12, "conditional-oscillation leakage estimator", criterion_12},
    };
    return all;
}

int run_criterion(const Criterion& c) {
    Gate gate;
    bool ok = false;
    try {
        ok = c.fn(gate);
    } catch (const std::exception& e) {
        gate.ok = false;
        gate.note(std::string("exception: ") + e.what());
    }
    std::printf("criterion %d (%s): %s%s%s\n", c.number, c.name, gate.ok ? "PASS" : "FAIL",
                gate.detail.empty() ? "" : " -- ", gate.detail.c_str());
    std::fflush(stdout);
    return gate.ok && ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("LRUQEC_ACCEPT_THREADS")) {
        g_threads = std::max(1, std::atoi(env));
    } else {
        g_threads = std::max(1, omp_get_max_threads());
    }

    if (argc > 1) {
        const int want = std::atoi(argv[1]);
        for (const auto& c : criteria()) {
            if (c.number == want) {
                return run_criterion(c);
            }
        }
        std::fprintf(stderr, "unknown criterion %s (valid: 1..12)\n", argv[1]);
        return 2;
    }
    int failures = 0;
    for (const auto& c : criteria()) {
        failures += run_criterion(c);
    }
    return failures == 0 ? 0 : 1;
}
