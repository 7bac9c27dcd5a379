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

#include "lruqec/analysis/postselect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lruqec::analysis {

namespace {

PostselectionResult assemble(const qec::Dataset& dataset, const std::vector<uint8_t>& success,
                             std::vector<uint32_t> kept_indices, int min_survivors) {
    std::sort(kept_indices.begin(), kept_indices.end());

    std::map<int, PlPoint> pl_acc;
    std::map<int, KeptPoint> kept_acc;
    for (const auto& shot : dataset.shots) {
        KeptPoint& k = kept_acc[shot.rounds];
        k.rounds = shot.rounds;
        k.total += 1;
    }
    for (uint32_t idx : kept_indices) {
        const auto& shot = dataset.shots[idx];
        kept_acc[shot.rounds].kept += 1;
        PlPoint& pt = pl_acc[shot.rounds];
        pt.rounds = shot.rounds;
        pt.shots += 1;
        pt.failures += success[idx] ? 0 : 1;
    }

    PostselectionResult res;
    res.kept_indices = std::move(kept_indices);
    std::vector<double> f_x, f_y;
    for (auto& [rounds, k] : kept_acc) {
        k.fraction = k.total > 0 ? static_cast<double>(k.kept) / static_cast<double>(k.total) : 0.0;
        res.kept.push_back(k);
        if (k.kept > 0) {
            f_x.push_back(static_cast<double>(rounds));
            f_y.push_back(k.fraction);
        }
    }
    if (f_x.empty()) {
        throw std::runtime_error("post-selection discarded every shot at every round");
    }
    std::vector<PlPoint> eligible;
    for (auto& [rounds, pt] : pl_acc) {
        pt.p = static_cast<double>(pt.failures) / static_cast<double>(pt.shots);
        const double n = static_cast<double>(pt.shots);
        pt.sigma = std::max(std::sqrt(pt.p * (1.0 - pt.p) / n), 0.5 / n);
        res.pl.push_back(pt);
        if (pt.shots > min_survivors) {
            eligible.push_back(pt);
        }
    }
    if (f_x.size() >= 3) {
        res.kept_fit = fit_exp_decay(f_x, f_y);
        res.kept_fit_valid = true;
    }
    try {
        if (dataset.kind == qec::ExperimentKind::memory) {
            res.pl_fit = fit_memory(eligible);
        } else {
            res.pl_fit = fit_stability(eligible);
        }
        res.pl_fit_valid = true;
    } catch (const std::invalid_argument&) {
        res.pl_fit_valid = false;  // too few surviving rounds
    }
    return res;
}

}  // namespace

PostselectionResult postselect_leakage(const qec::Dataset& dataset,
                                       const std::vector<uint8_t>& success, int min_survivors) {
    if (success.size() != dataset.shots.size()) {
        throw std::invalid_argument("success flags do not match the dataset");
    }
    std::vector<uint32_t> kept;
    for (size_t i = 0; i < dataset.shots.size(); ++i) {
        const auto& flags = dataset.shots[i].flags;
        bool leaked = false;
        for (uint8_t f : flags) {
            if (f) {
                leaked = true;
                break;
            }
        }
        if (!leaked) {
            kept.push_back(static_cast<uint32_t>(i));
        }
    }
    return assemble(dataset, success, std::move(kept), min_survivors);
}

PostselectionResult postselect_confidence(const qec::Dataset& dataset,
                                          const std::vector<uint8_t>& success,
                                          const std::vector<double>& p_out,
                                          const std::vector<KeptPoint>& kept_target,
                                          int min_survivors) {
    if (success.size() != dataset.shots.size() || p_out.size() != dataset.shots.size()) {
        throw std::invalid_argument("success or p_out arrays do not match the dataset");
    }
    std::map<int, long> target;
    for (const auto& k : kept_target) {
        target[k.rounds] = k.kept;
    }
    std::map<int, std::vector<uint32_t>> by_rounds;
    for (size_t i = 0; i < dataset.shots.size(); ++i) {
        by_rounds[dataset.shots[i].rounds].push_back(static_cast<uint32_t>(i));
    }

    std::vector<uint32_t> kept;
    for (auto& [rounds, idx] : by_rounds) {
        const auto it = target.find(rounds);
        const long want = it != target.end() ? it->second : static_cast<long>(idx.size());
        // Most-confident first; on ties the earliest dataset index survives.
        std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
            const double ca = std::abs(p_out[a] - 0.5);
            const double cb = std::abs(p_out[b] - 0.5);
            if (ca != cb) {
                return ca > cb;
            }
            return a < b;
        });
        for (long i = 0; i < want && i < static_cast<long>(idx.size()); ++i) {
            kept.push_back(idx[static_cast<size_t>(i)]);
        }
    }
    return assemble(dataset, success, std::move(kept), min_survivors);
}

}  // namespace lruqec::analysis
