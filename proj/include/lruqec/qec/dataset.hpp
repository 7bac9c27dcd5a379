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

#include "lruqec/qec/record.hpp"

namespace lruqec::qec {

enum class SplitKind : uint8_t { train, validation, test };

struct Dataset {
    ExperimentKind kind = ExperimentKind::memory;
    SplitKind split = SplitKind::train;
    std::vector<ShotRecord> shots;
    uint64_t seed = 0;
    std::string description;
};

struct DatasetBundle {
    Dataset train;
    Dataset validation;
    Dataset test;
};

// Experiment round grids and leakage grids.
std::vector<int> memory_train_rounds();   // {1..8, 11, 14, ..., 41}
std::vector<int> memory_test_rounds();    // up to 108, no random flips
std::vector<int> stability_rounds();      // {3..40}
std::vector<double> memory_l1_grid();     // {0.98, 1.58, 2.6, 3.63, 4.9} %
std::vector<double> stability_l1_grid();  // {1.2, 2.8, 3.7, 5.3, 7.6} %

/// Simulate `shots_per_spec` shots of every spec, in spec-major order.
/// Record i uses rng stream (seed', i), so equal seeds give identical
/// datasets for any thread count.
Dataset generate_memory_dataset(const std::vector<MemorySpec>& specs, int shots_per_spec,
                                const NoiseModel& noise, SplitKind split, uint64_t seed,
                                int n_threads);

Dataset generate_stability_dataset(const std::vector<StabilitySpec>& specs, int shots_per_spec,
                                   const NoiseModel& noise, SplitKind split, uint64_t seed,
                                   int n_threads);

/// Desk-scaled analogue of the experimental dataset family at one
/// (leakage rate, LRU flag) point.
struct MemoryPlan {
    double l1 = 0.0098;
    bool lru_on = true;
    double rx12_theta = 0.0;
    std::vector<uint8_t> bitstrings = {0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<int> train_rounds = memory_train_rounds();
    std::vector<int> test_rounds = memory_test_rounds();
    // Train/validation specs carry per-spec random flip vectors obeying the
    // parity constraint; the test split has none.
    int train_flip_vectors = 66;
    int val_flip_vectors = 6;
    int shots_per_train_spec = 1;
    int shots_per_val_spec = 1;
    int shots_per_test_spec = 60;
    bool train_with_flips = true;
};

DatasetBundle generate_memory_bundle(const MemoryPlan& plan, const NoiseModel& noise,
                                     uint64_t seed, int n_threads);

struct StabilityPlan {
    double l1 = 0.012;
    bool lru_on = true;
    double rx12_theta = 0.0;
    std::vector<uint8_t> bitstrings = {0, 1, 2,  3,  4,  5,  6,  7,
                                       8, 9, 10, 11, 12, 13, 14, 15};
    std::vector<int> rounds = stability_rounds();
    int shots_per_train_spec = 66;
    int shots_per_val_spec = 6;
    int shots_per_test_spec = 10;
};

DatasetBundle generate_stability_bundle(const StabilityPlan& plan, const NoiseModel& noise,
                                        uint64_t seed, int n_threads);

/// Expand a plan into its spec grid (exposed for tests and the CLI).
std::vector<MemorySpec> memory_train_specs(const MemoryPlan& plan, uint64_t seed);
std::vector<MemorySpec> memory_val_specs(const MemoryPlan& plan, uint64_t seed);
std::vector<MemorySpec> memory_test_specs(const MemoryPlan& plan);
std::vector<StabilitySpec> stability_specs(const StabilityPlan& plan);

/// JSONL persistence; one record per line, schema documented in
/// docs/file_formats.md. A bundle directory additionally holds a
/// manifest.json with the seeds and split files.
void save_dataset(const Dataset& dataset, const std::string& path);
Dataset load_dataset(const std::string& path);
void save_bundle(const DatasetBundle& bundle, const std::string& directory);
DatasetBundle load_bundle(const std::string& directory);

}  // namespace lruqec::qec
