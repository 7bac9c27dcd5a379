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

#include "lruqec/analysis/sweep.hpp"

#include <omp.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "lruqec/io/text_format.hpp"

namespace lruqec::analysis {

namespace {

struct PointSetup {
    NoiseModel noise;
    double l1 = 0.0;
    double theta = 0.0;
};

PointSetup setup_for(const SweepConfig& cfg, double value) {
    PointSetup s;
    const bool memory = cfg.kind == qec::ExperimentKind::memory;
    s.noise = memory ? NoiseModel::memory_defaults() : NoiseModel::stability_defaults();
    const std::vector<int> measure = memory ? qec::MemoryLayout::measure_qubits()
                                            : qec::StabilityLayout::measure_qubits();
    switch (cfg.axis) {
        case SweepAxis::l_cz:
            s.l1 = value;
            break;
        case SweepAxis::l_msmt:
            s.l1 = 0.0;
            s.noise = qec::inject_measurement_leakage(s.noise, 4.0 * value, measure);
            break;
        case SweepAxis::l_1q:
            s.l1 = 0.0;
            s.theta = 2.0 * std::asin(std::min(1.0, std::sqrt(4.0 * value)));
            break;
        case SweepAxis::residual_f:
            s.l1 = memory ? cfg.intermediate_l1_memory : cfg.intermediate_l1_stability;
            s.noise = qec::set_removal_fraction(s.noise, 1.0 - value, measure);
            break;
        case SweepAxis::ef_infidelity:
            s.l1 = memory ? cfg.intermediate_l1_memory : cfg.intermediate_l1_stability;
            s.noise = qec::set_ef_assignment_infidelity(s.noise, value, measure);
            break;
    }
    return s;
}

std::vector<PlPoint> to_curve(const std::vector<PlPoint>& pts) { return pts; }

}  // namespace

std::vector<SweepRow> sweep_report(const SweepConfig& cfg) {
    if (cfg.grid.empty()) {
        throw std::invalid_argument("empty sweep grid");
    }
    if (cfg.variants.empty()) {
        throw std::invalid_argument("no sweep variants");
    }
    const bool memory = cfg.kind == qec::ExperimentKind::memory;

    std::vector<SweepRow> rows;
    for (size_t gi = 0; gi < cfg.grid.size(); ++gi) {
        const double value = cfg.grid[gi];
        const PointSetup setup = setup_for(cfg, value);

        for (bool lru : {true, false}) {
            std::vector<size_t> variant_ids;
            for (size_t vi = 0; vi < cfg.variants.size(); ++vi) {
                if (cfg.variants[vi].lru_on == lru) {
                    variant_ids.push_back(vi);
                }
            }
            if (variant_ids.empty()) {
                continue;
            }

            const uint64_t point_seed =
                Rng::stream(cfg.seed, gi * 2 + (lru ? 0 : 1)).next_u64();
            qec::DatasetBundle bundle;
            if (memory) {
                qec::MemoryPlan plan = cfg.memory_plan;
                plan.l1 = setup.l1;
                plan.lru_on = lru;
                plan.rx12_theta = setup.theta;
                bundle = qec::generate_memory_bundle(plan, setup.noise, point_seed, cfg.threads);
            } else {
                qec::StabilityPlan plan = cfg.stability_plan;
                plan.l1 = setup.l1;
                plan.lru_on = lru;
                plan.rx12_theta = setup.theta;
                bundle = qec::generate_stability_bundle(plan, setup.noise, point_seed, cfg.threads);
            }

            // Train (mode x ensemble member) jobs in parallel; the two
            // readout modes reuse the same simulated shots.
            struct Job {
                size_t variant_id;
                int member;
            };
            std::vector<Job> jobs;
            for (size_t vid : variant_ids) {
                for (int m = 0; m < cfg.ensemble_size; ++m) {
                    jobs.push_back({vid, m});
                }
            }
            std::vector<nn::EncodedDataset> enc_train(cfg.variants.size());
            std::vector<nn::EncodedDataset> enc_val(cfg.variants.size());
            std::vector<nn::EncodedDataset> enc_test(cfg.variants.size());
            for (size_t vid : variant_ids) {
                const nn::ReadoutMode mode = cfg.variants[vid].mode;
                enc_train[vid] = nn::encode_dataset(bundle.train, mode);
                enc_val[vid] = nn::encode_dataset(bundle.validation, mode);
                enc_test[vid] = nn::encode_dataset(bundle.test, mode);
            }

            std::vector<std::vector<nn::DecoderModel>> trained(cfg.variants.size());
            for (size_t vid : variant_ids) {
                trained[vid].resize(static_cast<size_t>(cfg.ensemble_size));
            }
            std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, cfg.threads))
            for (int ji = 0; ji < static_cast<int>(jobs.size()); ++ji) {
                try {
                    const Job& job = jobs[static_cast<size_t>(ji)];
                    const SweepVariant& var = cfg.variants[job.variant_id];
                    nn::ModelConfig arch = memory ? nn::ModelConfig::memory_default(var.mode)
                                                  : nn::ModelConfig::stability_default(var.mode);
                    nn::TrainConfig tc = cfg.train;
                    tc.seed = Rng::stream(point_seed,
                                          0x1000 + job.variant_id * 64 +
                                              static_cast<uint64_t>(job.member))
                                  .next_u64();
                    nn::TrainResult tr =
                        nn::train(arch, enc_train[job.variant_id], enc_val[job.variant_id], tc);
                    trained[job.variant_id][static_cast<size_t>(job.member)] =
                        std::move(tr.model);
                } catch (...) {
#pragma omp critical
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
            if (error) {
                std::rethrow_exception(error);
            }

            for (size_t vid : variant_ids) {
                const nn::DecodeResult dec =
                    nn::decode_ensemble(trained[vid], enc_test[vid]);
                const auto curve = nn::logical_error_by_rounds(bundle.test, dec.success);
                SweepRow row;
                row.axis_value = value;
                row.variant = cfg.variants[vid];
                row.curve = to_curve(curve);
                row.test_shots = static_cast<long>(bundle.test.shots.size());
                row.fit = memory ? fit_memory(curve) : fit_stability(curve);
                if (memory) {
                    std::vector<uint8_t> mv(bundle.test.shots.size());
                    for (size_t i = 0; i < bundle.test.shots.size(); ++i) {
                        mv[i] = nn::majority_vote_success(bundle.test.shots[i]) ? 1 : 0;
                    }
                    row.mv_fit = fit_memory(nn::logical_error_by_rounds(bundle.test, mv));
                    row.mv_valid = true;
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

void save_sweep_csv(const std::vector<SweepRow>& rows, qec::ExperimentKind kind,
                    const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << "axis_value,lru,readout,epsilon,epsilon_err,gamma,gamma_err,amplitude,amplitude_err,"
           "mv_epsilon,test_shots\n";
    for (const auto& r : rows) {
        out << io::full_precision(r.axis_value) << "," << (r.variant.lru_on ? 1 : 0) << ","
            << (r.variant.mode == nn::ReadoutMode::three_level ? "3ro" : "2ro") << ","
            << io::full_precision(r.fit.epsilon) << "," << io::full_precision(r.fit.epsilon_sigma)
            << "," << io::full_precision(r.fit.gamma) << ","
            << io::full_precision(r.fit.gamma_sigma) << "," << io::full_precision(r.fit.amplitude)
            << "," << io::full_precision(r.fit.amplitude_sigma) << ","
            << (r.mv_valid ? io::full_precision(r.mv_fit.epsilon) : std::string("")) << ","
            << r.test_shots << "\n";
    }
    (void)kind;
}

}  // namespace lruqec::analysis
