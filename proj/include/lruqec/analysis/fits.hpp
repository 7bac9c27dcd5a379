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

#include <vector>

namespace lruqec::analysis {

/// One point of a logical-error-probability curve. sigma is the binomial
/// standard error sqrt(p(1-p)/n) floored at 1/(2n) for p in {0, 1}.
struct PlPoint {
    int rounds = 0;
    long shots = 0;
    long failures = 0;
    double p = 0.0;
    double sigma = 0.0;
};

enum class FitKind { memory, stability, cheating };

struct FitResult {
    FitKind kind = FitKind::memory;
    // memory: p_L(R) = 1/2 - 1/2 (1 - 2 eps)^R  (R0 fixed to 0)
    double epsilon = 0.0;
    double epsilon_sigma = 0.0;
    // stability: p_L(R) = A exp(-gamma R)
    double gamma = 0.0;
    double gamma_sigma = 0.0;
    double amplitude = 0.0;
    double amplitude_sigma = 0.0;
    // cheating: p_L(R) = p_inf - 1/2 (1 - 2 eps)^(R + R0)
    double p_inf = 0.0;
    double p_inf_sigma = 0.0;
    double r0 = 0.0;

    int window_start = 0;
    int points_used = 0;
    int excluded_points = 0;  // zero-probability points dropped from a log fit
    double chi2 = 0.0;
};

/// Weighted fit of the memory model with R0 = 0, using rounds >= window_start
/// (default 5). Needs at least 3 points in the window.
FitResult fit_memory(const std::vector<PlPoint>& curve, int window_start = 5);

/// Log-linear weighted fit of A e^{-gamma R} for rounds >= window_start
/// (default 10); p = 0 points in the window are excluded (counted in
/// excluded_points). gamma is clamped at 0.
FitResult fit_stability(const std::vector<PlPoint>& curve, int window_start = 10);

/// Plateau fit p_inf - 1/2 (1 - 2 eps)^(R + R0) with R0 free (absorbed into
/// an amplitude), used for decoder-cheating diagnostics.
FitResult fit_cheating(const std::vector<PlPoint>& curve, int window_start = 1);

/// Exponential-decay fit y = A e^{-b x} plus its coefficient of
/// determination in linear space.
struct ExpDecayFit {
    double a = 0.0;
    double b = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

ExpDecayFit fit_exp_decay(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lruqec::analysis
