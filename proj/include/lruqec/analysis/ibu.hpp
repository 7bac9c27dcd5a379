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

#include "lruqec/stochastic_matrix.hpp"

namespace lruqec::analysis {

/// Iterative Bayesian unfolding of measured outcome counts through a readout
/// response matrix R(o|s) = response(s, o):
///   p_{k+1}(s) = p_k(s) * sum_o R(o|s) c(o) / sum_s' R(o|s') p_k(s')
/// starting from the uniform prior (or `prior` when given). The output stays
/// normalized at every iteration.
std::array<double, 3> ibu_correct(const std::array<double, 3>& counts,
                                  const AssignmentMatrix& response, int iterations = 10,
                                  const std::array<double, 3>* prior = nullptr);

}  // namespace lruqec::analysis
