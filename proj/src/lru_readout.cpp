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

#include "lruqec/lru/readout.hpp"

#include <cmath>
#include <stdexcept>

#include "lruqec/rng.hpp"

namespace lruqec::lru {

ReadoutClassification classify_readout(const LruRun& run, double noise_scale, uint64_t seed) {
    if (noise_scale < 0.0) {
        throw std::invalid_argument("noise scale must be non-negative");
    }
    ReadoutClassification out;
    out.noise_scale = noise_scale;
    for (int s = 0; s < 3; ++s) {
        const auto& sig = run.signals[static_cast<size_t>(s)];
        if (sig.empty()) {
            throw std::invalid_argument("classification needs trajectories for all three levels");
        }
        Complex mean(0.0, 0.0);
        for (const Complex& z : sig) {
            mean += z;
        }
        out.class_means[static_cast<size_t>(s)] = mean / static_cast<double>(sig.size());
    }
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            if (std::abs(out.class_means[static_cast<size_t>(a)] -
                         out.class_means[static_cast<size_t>(b)]) < 1e-12) {
                throw std::runtime_error("degenerate class means; readout cannot discriminate");
            }
        }
    }

    std::array<std::array<double, 3>, 3> counts{};
    Rng rng(seed);
    for (int s = 0; s < 3; ++s) {
        const auto& sig = run.signals[static_cast<size_t>(s)];
        for (const Complex& z : sig) {
            const Complex noisy =
                z + Complex(noise_scale * rng.normal(), noise_scale * rng.normal());
            int best = 0;
            double best_d = std::abs(noisy - out.class_means[0]);
            for (int o = 1; o < 3; ++o) {
                const double d = std::abs(noisy - out.class_means[static_cast<size_t>(o)]);
                if (d < best_d) {
                    best_d = d;
                    best = o;
                }
            }
            counts[static_cast<size_t>(s)][static_cast<size_t>(best)] += 1.0;
        }
        const double total = static_cast<double>(sig.size());
        for (int o = 0; o < 3; ++o) {
            counts[static_cast<size_t>(s)][static_cast<size_t>(o)] /= total;
        }
    }
    out.assignment = AssignmentMatrix::from_rows(counts);
    return out;
}

double assignment_fidelity(const AssignmentMatrix& m) {
    return (m(0, 0) + m(1, 1) + m(2, 2)) / 3.0;
}

double ge_fidelity(const AssignmentMatrix& m) {
    // Two-level view: outcome 2 counts as 1.
    const double p0g = m(0, 0);
    const double p1e = m(1, 1) + m(1, 2);
    return 0.5 * (p0g + p1e);
}

double calibrate_noise_scale(const LruRun& standard_run, double target_ge_fidelity,
                             uint64_t seed) {
    if (!(target_ge_fidelity > 0.5 && target_ge_fidelity < 1.0)) {
        throw std::invalid_argument("target fidelity must lie in (0.5, 1)");
    }
    // ge_fidelity decreases monotonically with the noise scale (up to Monte
    // Carlo fluctuations); bracket then bisect.
    double lo = 0.0;
    double hi = 1.0;
    const auto fid = [&](double scale) {
        return ge_fidelity(classify_readout(standard_run, scale, seed).assignment);
    };
    while (fid(hi) > target_ge_fidelity && hi < 1e6) {
        hi *= 2.0;
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (fid(mid) > target_ge_fidelity) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace lruqec::lru
