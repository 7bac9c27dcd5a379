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

#include "lruqec/qec/dataset.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lruqec::qec {

std::vector<int> memory_train_rounds() {
    std::vector<int> r = {1, 2, 3, 4, 5, 6, 7, 8};
    for (int v = 11; v <= 41; v += 3) {
        r.push_back(v);
    }
    return r;
}

std::vector<int> memory_test_rounds() {
    return {1, 2, 3, 4, 5, 7, 8, 10, 13, 16, 21, 26, 33, 42, 53, 68, 87, 108};
}

std::vector<int> stability_rounds() {
    std::vector<int> r;
    for (int v = 3; v <= 40; ++v) {
        r.push_back(v);
    }
    return r;
}

std::vector<double> memory_l1_grid() { return {0.0098, 0.0158, 0.026, 0.0363, 0.049}; }

std::vector<double> stability_l1_grid() { return {0.012, 0.028, 0.037, 0.053, 0.076}; }

namespace {

uint64_t sub_seed(uint64_t seed, uint64_t purpose) {
    return Rng::stream(seed, purpose).next_u64();
}

/// Random flip vector of length `rounds` with flips[0] fixed to the parity
/// of the remaining entries, so the total flip parity vanishes.
std::vector<uint8_t> sample_flips(int rounds, Rng& rng) {
    std::vector<uint8_t> f(static_cast<size_t>(rounds), 0);
    uint8_t tail = 0;
    for (int i = 1; i < rounds; ++i) {
        f[static_cast<size_t>(i)] = rng.bernoulli(0.5) ? 1 : 0;
        tail ^= f[static_cast<size_t>(i)];
    }
    f[0] = tail;
    return f;
}

}  // namespace

Dataset generate_memory_dataset(const std::vector<MemorySpec>& specs, int shots_per_spec,
                                const NoiseModel& noise, SplitKind split, uint64_t seed,
                                int n_threads) {
    if (specs.empty()) {
        throw std::invalid_argument("empty spec grid");
    }
    if (shots_per_spec < 1) {
        throw std::invalid_argument("shots_per_spec must be at least 1");
    }
    for (const auto& s : specs) {
        s.validate();
    }
    // Rate tables depend only on the noise model; share them across circuits.
    const ShotPlan proto(build_memory_circuit(specs.front()), noise);
    const auto& tables = proto.tables();

    const uint64_t shot_seed = sub_seed(seed, 1);
    const int total = static_cast<int>(specs.size()) * shots_per_spec;
    Dataset ds;
    ds.kind = ExperimentKind::memory;
    ds.split = split;
    ds.seed = seed;
    ds.shots.resize(static_cast<size_t>(total));
#pragma omp parallel for schedule(dynamic, 8) num_threads(std::max(1, n_threads))
    for (int i = 0; i < total; ++i) {
        const MemorySpec& spec = specs[static_cast<size_t>(i / shots_per_spec)];
        const Circuit circuit = build_memory_circuit(spec);
        ShotPlan plan(circuit, noise, &tables);
        Rng rng = Rng::stream(shot_seed, static_cast<uint64_t>(i));
        ds.shots[static_cast<size_t>(i)] = record_from_memory_shot(spec, plan.run(rng));
        ds.shots[static_cast<size_t>(i)].spec_id = static_cast<uint32_t>(i / shots_per_spec);
    }
    return ds;
}

Dataset generate_stability_dataset(const std::vector<StabilitySpec>& specs, int shots_per_spec,
                                   const NoiseModel& noise, SplitKind split, uint64_t seed,
                                   int n_threads) {
    if (specs.empty()) {
        throw std::invalid_argument("empty spec grid");
    }
    if (shots_per_spec < 1) {
        throw std::invalid_argument("shots_per_spec must be at least 1");
    }
    for (const auto& s : specs) {
        s.validate();
    }
    const ShotPlan proto(build_stability_circuit(specs.front()), noise);
    const auto& tables = proto.tables();

    // Reference logical values; independent of R, computed once per q_a.
    std::map<uint8_t, uint8_t> z_ref;
    for (const auto& s : specs) {
        if (!z_ref.count(s.q_a)) {
            z_ref[s.q_a] = stability_reference_z(s.q_a, s.rounds);
        }
    }

    const uint64_t shot_seed = sub_seed(seed, 1);
    const int total = static_cast<int>(specs.size()) * shots_per_spec;
    Dataset ds;
    ds.kind = ExperimentKind::stability;
    ds.split = split;
    ds.seed = seed;
    ds.shots.resize(static_cast<size_t>(total));
#pragma omp parallel for schedule(dynamic, 8) num_threads(std::max(1, n_threads))
    for (int i = 0; i < total; ++i) {
        const StabilitySpec& spec = specs[static_cast<size_t>(i / shots_per_spec)];
        const Circuit circuit = build_stability_circuit(spec);
        ShotPlan plan(circuit, noise, &tables);
        Rng rng = Rng::stream(shot_seed, static_cast<uint64_t>(i));
        ds.shots[static_cast<size_t>(i)] =
            record_from_stability_shot(spec, plan.run(rng), z_ref.at(spec.q_a));
        ds.shots[static_cast<size_t>(i)].spec_id = static_cast<uint32_t>(i / shots_per_spec);
    }
    return ds;
}

std::vector<MemorySpec> memory_train_specs(const MemoryPlan& plan, uint64_t seed) {
    Rng flip_rng(sub_seed(seed, 2));
    std::vector<MemorySpec> specs;
    for (uint8_t q : plan.bitstrings) {
        for (int r : plan.train_rounds) {
            for (int j = 0; j < plan.train_flip_vectors; ++j) {
                MemorySpec s;
                s.q_d = q;
                s.rounds = r;
                s.flips = plan.train_with_flips ? sample_flips(r, flip_rng)
                                                : std::vector<uint8_t>(static_cast<size_t>(r), 0);
                s.lru_on = plan.lru_on;
                s.l1 = plan.l1;
                s.rx12_theta = plan.rx12_theta;
                specs.push_back(std::move(s));
            }
        }
    }
    return specs;
}

std::vector<MemorySpec> memory_val_specs(const MemoryPlan& plan, uint64_t seed) {
    MemoryPlan p = plan;
    p.train_flip_vectors = plan.val_flip_vectors;
    return memory_train_specs(p, sub_seed(seed, 3));
}

std::vector<MemorySpec> memory_test_specs(const MemoryPlan& plan) {
    std::vector<MemorySpec> specs;
    for (uint8_t q : plan.bitstrings) {
        for (int r : plan.test_rounds) {
            MemorySpec s;
            s.q_d = q;
            s.rounds = r;
            s.flips.assign(static_cast<size_t>(r), 0);
            s.lru_on = plan.lru_on;
            s.l1 = plan.l1;
            s.rx12_theta = plan.rx12_theta;
            specs.push_back(std::move(s));
        }
    }
    return specs;
}

std::vector<StabilitySpec> stability_specs(const StabilityPlan& plan) {
    std::vector<StabilitySpec> specs;
    for (uint8_t q : plan.bitstrings) {
        for (int r : plan.rounds) {
            StabilitySpec s;
            s.q_a = q;
            s.rounds = r;
            s.lru_on = plan.lru_on;
            s.l1 = plan.l1;
            s.rx12_theta = plan.rx12_theta;
            specs.push_back(s);
        }
    }
    return specs;
}

DatasetBundle generate_memory_bundle(const MemoryPlan& plan, const NoiseModel& noise,
                                     uint64_t seed, int n_threads) {
    DatasetBundle b;
    b.train = generate_memory_dataset(memory_train_specs(plan, seed), plan.shots_per_train_spec,
                                      noise, SplitKind::train, sub_seed(seed, 10), n_threads);
    b.validation =
        generate_memory_dataset(memory_val_specs(plan, seed), plan.shots_per_val_spec, noise,
                                SplitKind::validation, sub_seed(seed, 11), n_threads);
    b.test = generate_memory_dataset(memory_test_specs(plan), plan.shots_per_test_spec, noise,
                                     SplitKind::test, sub_seed(seed, 12), n_threads);
    b.train.description = "memory train";
    b.validation.description = "memory validation";
    b.test.description = "memory test";
    return b;
}

DatasetBundle generate_stability_bundle(const StabilityPlan& plan, const NoiseModel& noise,
                                        uint64_t seed, int n_threads) {
    const auto specs = stability_specs(plan);
    DatasetBundle b;
    b.train = generate_stability_dataset(specs, plan.shots_per_train_spec, noise, SplitKind::train,
                                         sub_seed(seed, 10), n_threads);
    b.validation = generate_stability_dataset(specs, plan.shots_per_val_spec, noise,
                                              SplitKind::validation, sub_seed(seed, 11), n_threads);
    b.test = generate_stability_dataset(specs, plan.shots_per_test_spec, noise, SplitKind::test,
                                        sub_seed(seed, 12), n_threads);
    b.train.description = "stability train";
    b.validation.description = "stability validation";
    b.test.description = "stability test";
    return b;
}

}  // namespace lruqec::qec
