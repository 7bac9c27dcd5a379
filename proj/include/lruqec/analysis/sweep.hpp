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

#include "lruqec/analysis/fits.hpp"
#include "lruqec/nn/decode.hpp"
#include "lruqec/nn/train.hpp"
#include "lruqec/qec/leakage.hpp"

namespace lruqec::analysis {

/// Leakage axes: CZ-gate leakage L1, measurement-induced leakage
/// L_msmt = P(f|e)/4, single-qubit injection L_1Q = sin^2(theta/2)/4,
/// residual |f> population (1 - removal fraction), and e-f assignment
/// infidelity. The latter two run at an intermediate CZ leakage level; the
/// middle two keep all other leakage sources at zero.
enum class SweepAxis { l_cz, l_msmt, l_1q, residual_f, ef_infidelity };

struct SweepVariant {
    bool lru_on = true;
    nn::ReadoutMode mode = nn::ReadoutMode::three_level;
};

struct SweepRow {
    double axis_value = 0.0;
    SweepVariant variant;
    FitResult fit;
    std::vector<PlPoint> curve;
    long test_shots = 0;
    FitResult mv_fit;  // memory only: majority-vote baseline
    bool mv_valid = false;
};

struct SweepConfig {
    qec::ExperimentKind kind = qec::ExperimentKind::memory;
    SweepAxis axis = SweepAxis::l_cz;
    std::vector<double> grid;
    std::vector<SweepVariant> variants = {
        {true, nn::ReadoutMode::three_level},
        {true, nn::ReadoutMode::two_level},
        {false, nn::ReadoutMode::three_level},
        {false, nn::ReadoutMode::two_level},
    };
    qec::MemoryPlan memory_plan;        // shot-scale template (l1/lru overridden)
    qec::StabilityPlan stability_plan;
    nn::TrainConfig train = nn::TrainConfig::memory_default();
    int ensemble_size = 1;
    uint64_t seed = 1;
    int threads = 1;
    double intermediate_l1_memory = 0.036;
    double intermediate_l1_stability = 0.037;
};

/// One generate -> train -> decode -> fit pipeline per (axis value, variant);
/// the two readout modes of a variant pair share the simulated datasets.
std::vector<SweepRow> sweep_report(const SweepConfig& config);

void save_sweep_csv(const std::vector<SweepRow>& rows, qec::ExperimentKind kind,
                    const std::string& path);

}  // namespace lruqec::analysis
