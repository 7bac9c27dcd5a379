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
#include <stdexcept>

#include "lruqec/rng.hpp"

namespace lruqec {

/// Row-stochastic 3x3 matrix over the transmon levels {g=0, e=1, f=2}.
/// Used both for readout assignment, p[s][o] = P(reported outcome o | projected
/// state s), and for population transfer, q[s][s'] = P(final state s' |
/// projected state s).
class StochasticMatrix3 {
  public:
    static constexpr double kRowSumTol = 1e-12;

    /// Identity (perfect assignment / no transfer).
    StochasticMatrix3() {
        for (int s = 0; s < 3; ++s) {
            for (int o = 0; o < 3; ++o) {
                m_[s][o] = (s == o) ? 1.0 : 0.0;
            }
        }
    }

    static StochasticMatrix3 from_rows(const std::array<std::array<double, 3>, 3>& rows) {
        StochasticMatrix3 out;
        out.m_ = rows;
        out.validate();
        return out;
    }

    double operator()(int s, int o) const { return m_[s][o]; }

    /// Sample an output index from row s.
    int sample(int s, Rng& rng) const { return rng.sample_discrete(m_[s].data(), 3, 1.0); }

    /// Overwrite entry (s, o) and rescale the remaining entries of row s so
    /// the row still sums to one.
    StochasticMatrix3 with_entry(int s, int o, double value) const {
        if (value < 0.0 || value > 1.0) {
            throw std::invalid_argument("stochastic matrix entry outside [0, 1]");
        }
        StochasticMatrix3 out = *this;
        const double rest = 1.0 - m_[s][o];
        for (int j = 0; j < 3; ++j) {
            if (j == o) {
                out.m_[s][j] = value;
            } else if (rest > 0.0) {
                out.m_[s][j] = m_[s][j] * (1.0 - value) / rest;
            } else {
                // Row was a point mass on o; spread the remainder evenly.
                out.m_[s][j] = (1.0 - value) / 2.0;
            }
        }
        out.validate();
        return out;
    }

    void validate() const {
        for (int s = 0; s < 3; ++s) {
            double sum = 0.0;
            for (int o = 0; o < 3; ++o) {
                if (m_[s][o] < -kRowSumTol || m_[s][o] > 1.0 + kRowSumTol) {
                    throw std::invalid_argument("stochastic matrix entry outside [0, 1]");
                }
                sum += m_[s][o];
            }
            if (std::abs(sum - 1.0) > kRowSumTol) {
                throw std::invalid_argument("stochastic matrix row does not sum to 1");
            }
        }
    }

  private:
    std::array<std::array<double, 3>, 3> m_{};
};

using AssignmentMatrix = StochasticMatrix3;
using TransferMatrix = StochasticMatrix3;

/// Leakage removal fraction of a population transfer matrix: 1 - q[f][f].
inline double removal_fraction(const TransferMatrix& q) { return 1.0 - q(2, 2); }

}  // namespace lruqec
