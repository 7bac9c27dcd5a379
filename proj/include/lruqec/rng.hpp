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

#include <array>
#include <cmath>
#include <cstdint>

namespace lruqec {

/// xoshiro256++ generator with an explicit stream-splitting rule, so that
/// results are reproducible bit-for-bit across platforms and thread counts.
/// std::random distributions are avoided on purpose: their sampling
/// algorithms are implementation-defined.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        // SplitMix64 expansion of the seed into the xoshiro state.
        uint64_t x = seed;
        for (auto& word : state_) {
            word = split_mix(x);
        }
    }

    /// Stream derivation rule: stream k of master seed m is seeded with
    /// SplitMix64(m ^ (k + 1) * 0x9E3779B97F4A7C15). Shots, trajectories and
    /// ensemble members each own one stream, which makes parallel execution
    /// order-independent.
    static Rng stream(uint64_t master_seed, uint64_t stream_index) {
        uint64_t x = master_seed ^ ((stream_index + 1) * UINT64_C(0x9E3779B97F4A7C15));
        return Rng(split_mix(x));
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1) with 53 bits of mantissa.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1); safe as a log() argument.
    double uniform_open() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    /// Standard normal via Box-Muller (explicit formula, deterministic).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * kPi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Index i with probability weights[i] / total. Linear scan; n is tiny
    /// everywhere this is used.
    int sample_discrete(const double* weights, int n, double total) {
        double u = uniform() * total;
        for (int i = 0; i + 1 < n; ++i) {
            u -= weights[i];
            if (u < 0.0) {
                return i;
            }
        }
        return n - 1;
    }

    bool bernoulli(double p) { return uniform() < p; }

    static constexpr double kPi = 3.14159265358979323846;

  private:
    static uint64_t split_mix(uint64_t& x) {
        x += UINT64_C(0x9E3779B97F4A7C15);
        uint64_t z = x;
        z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
        return z ^ (z >> 31);
    }

    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::array<uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace lruqec
