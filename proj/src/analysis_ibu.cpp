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

#include "lruqec/analysis/ibu.hpp"

#include <stdexcept>

namespace lruqec::analysis {

std::array<double, 3> ibu_correct(const std::array<double, 3>& counts,
                                  const AssignmentMatrix& response, int iterations,
                                  const std::array<double, 3>* prior) {
    double total = 0.0;
    for (double c : counts) {
        if (c < 0.0) {
            throw std::invalid_argument("negative count");
        }
        total += c;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("zero total counts");
    }
    if (iterations < 1) {
        throw std::invalid_argument("need at least one unfolding iteration");
    }
    response.validate();

    std::array<double, 3> c{counts[0] / total, counts[1] / total, counts[2] / total};
    std::array<double, 3> p{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    if (prior != nullptr) {
        double psum = (*prior)[0] + (*prior)[1] + (*prior)[2];
        if (!(psum > 0.0)) {
            throw std::invalid_argument("prior must have positive mass");
        }
        for (int s = 0; s < 3; ++s) {
            p[static_cast<size_t>(s)] = (*prior)[static_cast<size_t>(s)] / psum;
        }
    }

    for (int it = 0; it < iterations; ++it) {
        std::array<double, 3> predicted{0.0, 0.0, 0.0};
        for (int o = 0; o < 3; ++o) {
            for (int s = 0; s < 3; ++s) {
                predicted[static_cast<size_t>(o)] += response(s, o) * p[static_cast<size_t>(s)];
            }
        }
        std::array<double, 3> next{0.0, 0.0, 0.0};
        double norm = 0.0;
        for (int s = 0; s < 3; ++s) {
            double acc = 0.0;
            for (int o = 0; o < 3; ++o) {
                if (predicted[static_cast<size_t>(o)] > 0.0) {
                    acc += response(s, o) * c[static_cast<size_t>(o)] /
                           predicted[static_cast<size_t>(o)];
                }
            }
            next[static_cast<size_t>(s)] = p[static_cast<size_t>(s)] * acc;
            norm += next[static_cast<size_t>(s)];
        }
        if (!(norm > 0.0)) {
            throw std::runtime_error("unfolding collapsed to zero mass");
        }
        for (int s = 0; s < 3; ++s) {
            p[static_cast<size_t>(s)] = next[static_cast<size_t>(s)] / norm;
        }
    }
    return p;
}

}  // namespace lruqec::analysis
