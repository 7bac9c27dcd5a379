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
#include <vector>

#include "lruqec/lru/readout.hpp"

namespace lruqec::lru {

enum class LandscapeAxes {
    amp_amp,     // x: transmon amplitude, y: resonator amplitude
    freq_delay,  // x: transmon frequency (GHz), y: t_delay (ns)
    delay_only,  // x ignored, y: t_delay (ns)
};

struct LandscapePoint {
    double x = 0.0;
    double y = 0.0;
    double removal_fraction = 0.0;  // 1 - P(f|f)
    double f_infidelity = 0.0;      // 1 - P(2|f)
    double residual_f = 0.0;        // P(f|f)
};

struct Landscape {
    LandscapeAxes axes = LandscapeAxes::amp_amp;
    std::vector<double> x_values;
    std::vector<double> y_values;
    std::vector<LandscapePoint> points;  // y-major: index = yi * nx + xi

    const LandscapePoint& at(size_t xi, size_t yi) const {
        return points[yi * x_values.size() + xi];
    }
};

struct LandscapeConfig {
    LandscapeAxes axes = LandscapeAxes::amp_amp;
    std::vector<double> x_values;
    std::vector<double> y_values;
    TrajectoryOptions trajectories;
    double noise_scale = 0.0;  // classifier noise; 0 keeps pure trajectory scatter
};

/// Evaluate the LRU figure of merit grid around `base_pulse`; each grid
/// point overrides the axes' parameters, runs the trajectory solver for all
/// three initial levels and classifies the readout.
Landscape sweep_landscape(const DeviceParams& device, const LRUPulseParams& base_pulse,
                          const LandscapeConfig& config);

/// Per-resonator-amplitude summary of an amp_amp landscape: the best removal
/// fraction across transmon amplitudes, used to identify the coherent /
/// working / high-power bands.
struct AmplitudeBands {
    std::vector<double> resonator_amps;
    std::vector<double> best_removal;  // per resonator amplitude
    int working_lo = -1;               // first index with removal >= threshold
    int working_hi = -1;               // last index with removal >= threshold
    double threshold = 0.9;
};

AmplitudeBands analyze_bands(const Landscape& landscape, double threshold = 0.9);

void save_landscape_csv(const Landscape& landscape, const std::string& path);

}  // namespace lruqec::lru
