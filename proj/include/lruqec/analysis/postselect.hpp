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

#include <cstdint>
#include <map>
#include <vector>

#include "lruqec/analysis/fits.hpp"
#include "lruqec/qec/dataset.hpp"

namespace lruqec::analysis {

struct KeptPoint {
    int rounds = 0;
    long kept = 0;
    long total = 0;
    double fraction = 1.0;
};

struct PostselectionResult {
    std::vector<uint32_t> kept_indices;  // dataset positions that survive
    std::vector<PlPoint> pl;             // post-selected logical error curve
    std::vector<KeptPoint> kept;         // kept fraction per round count
    ExpDecayFit kept_fit;                // exponential fit of f(R)
    bool kept_fit_valid = false;         // needs >= 3 rounds with survivors
    FitResult pl_fit;                    // on rounds with > min_survivors shots
    bool pl_fit_valid = false;
};

/// Discard every shot carrying a leakage flag in any round; recompute the
/// logical error curve from the surviving success flags and fit the kept
/// fraction to an exponential decay. The error-curve fit only uses rounds
/// with more than `min_survivors` surviving shots.
PostselectionResult postselect_leakage(const qec::Dataset& dataset,
                                       const std::vector<uint8_t>& success,
                                       int min_survivors = 250);

/// Discard the lowest-confidence shots (smallest |p_out - 1/2|, ties broken
/// by discarding the latest dataset indices first) until each round keeps
/// exactly as many shots as `kept_target` prescribes.
PostselectionResult postselect_confidence(const qec::Dataset& dataset,
                                          const std::vector<uint8_t>& success,
                                          const std::vector<double>& p_out,
                                          const std::vector<KeptPoint>& kept_target,
                                          int min_survivors = 250);

}  // namespace lruqec::analysis
