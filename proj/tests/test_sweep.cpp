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

#include <doctest.h>

#include "lruqec/analysis/sweep.hpp"

using namespace lruqec;
using namespace lruqec::analysis;

namespace {

SweepConfig tiny_memory_sweep() {
    SweepConfig sc;
    sc.kind = qec::ExperimentKind::memory;
    sc.axis = SweepAxis::l_cz;
    sc.grid = {0.03};
    sc.memory_plan.train_rounds = {1, 2, 3, 4, 5, 6};
    sc.memory_plan.test_rounds = {5, 6, 7};
    sc.memory_plan.train_flip_vectors = 10;
    sc.memory_plan.val_flip_vectors = 2;
    sc.memory_plan.shots_per_test_spec = 8;
    sc.train = nn::TrainConfig::memory_default();
    sc.train.max_epochs = 2;
    sc.train.patience = 2;
    sc.ensemble_size = 1;
    sc.seed = 3;
    sc.threads = 2;
    return sc;
}

}  // namespace

TEST_CASE("single-point sweep emits one row per variant") {
    SweepConfig sc = tiny_memory_sweep();
    const auto rows = sweep_report(sc);
    CHECK(rows.size() == sc.variants.size());
    for (const auto& row : rows) {
        CHECK(row.axis_value == 0.03);
        CHECK(row.test_shots == 8 * 8 * 3);
        CHECK(row.fit.epsilon >= 0.0);
        CHECK(row.mv_valid);
    }
    CHECK_THROWS_AS(sweep_report(SweepConfig{.grid = {}}), std::invalid_argument);
}

TEST_CASE("two-point grid with all four variants gives eight rows") {
    SweepConfig sc = tiny_memory_sweep();
    sc.grid = {0.01, 0.05};
    const auto rows = sweep_report(sc);
    CHECK(rows.size() == 8);
}
