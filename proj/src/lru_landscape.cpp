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

#include "lruqec/lru/landscape.hpp"

#include <omp.h>

#include <fstream>
#include <stdexcept>

#include "lruqec/io/text_format.hpp"

namespace lruqec::lru {

Landscape sweep_landscape(const DeviceParams& device, const LRUPulseParams& base_pulse,
                          const LandscapeConfig& config) {
    if (config.x_values.empty() || config.y_values.empty()) {
        throw std::invalid_argument("empty landscape grid");
    }
    Landscape out;
    out.axes = config.axes;
    out.x_values = config.x_values;
    out.y_values = config.y_values;
    const size_t nx = config.x_values.size();
    const size_t ny = config.y_values.size();
    out.points.resize(nx * ny);

    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, config.trajectories.n_threads))
    for (int pi = 0; pi < static_cast<int>(nx * ny); ++pi) {
        try {
            const size_t xi = static_cast<size_t>(pi) % nx;
            const size_t yi = static_cast<size_t>(pi) / nx;
            LRUPulseParams pulse = base_pulse;
            switch (config.axes) {
                case LandscapeAxes::amp_amp:
                    pulse.transmon_amp_rad_ns = config.x_values[xi];
                    pulse.resonator_amp_rad_ns = config.y_values[yi];
                    break;
                case LandscapeAxes::freq_delay:
                    pulse.transmon_freq_ghz = config.x_values[xi];
                    pulse.t_delay_ns = config.y_values[yi];
                    break;
                case LandscapeAxes::delay_only:
                    pulse.t_delay_ns = config.y_values[yi];
                    break;
            }
            TrajectoryOptions opts = config.trajectories;
            opts.n_threads = 1;  // the grid is already parallel
            opts.seed = Rng::stream(config.trajectories.seed, static_cast<uint64_t>(pi)).next_u64();
            const LruRun run = evolve_lru(device, pulse, opts);
            const ReadoutClassification cls =
                classify_readout(run, config.noise_scale, opts.seed ^ 0x5eed);
            LandscapePoint pt;
            pt.x = config.x_values[xi];
            pt.y = config.y_values[yi];
            pt.residual_f = run.transfer[2][2];
            pt.removal_fraction = 1.0 - pt.residual_f;
            pt.f_infidelity = 1.0 - cls.assignment(2, 2);
            out.points[yi * nx + xi] = pt;
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
    return out;
}

AmplitudeBands analyze_bands(const Landscape& landscape, double threshold) {
    if (landscape.axes != LandscapeAxes::amp_amp) {
        throw std::invalid_argument("band analysis needs an amplitude-amplitude landscape");
    }
    AmplitudeBands bands;
    bands.threshold = threshold;
    bands.resonator_amps = landscape.y_values;
    const size_t nx = landscape.x_values.size();
    for (size_t yi = 0; yi < landscape.y_values.size(); ++yi) {
        double best = 0.0;
        for (size_t xi = 0; xi < nx; ++xi) {
            best = std::max(best, landscape.at(xi, yi).removal_fraction);
        }
        bands.best_removal.push_back(best);
        if (best >= threshold) {
            if (bands.working_lo < 0) {
                bands.working_lo = static_cast<int>(yi);
            }
            bands.working_hi = static_cast<int>(yi);
        }
    }
    return bands;
}

void save_landscape_csv(const Landscape& landscape, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << "x,y,removal_fraction,f_assignment_infidelity,residual_f\n";
    for (const auto& pt : landscape.points) {
        out << io::full_precision(pt.x) << "," << io::full_precision(pt.y) << ","
            << io::full_precision(pt.removal_fraction) << ","
            << io::full_precision(pt.f_infidelity) << "," << io::full_precision(pt.residual_f)
            << "\n";
    }
}

}  // namespace lruqec::lru
