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

// Timing comparison of the OpenMP kernels against their serial reference
// paths: shot simulation, LRU trajectory batches, and the batched decoder
// forward pass against the per-sample reference.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>

#include "lruqec/lru/trajectory.hpp"
#include "lruqec/nn/decode.hpp"
#include "lruqec/qec/dataset.hpp"

using namespace lruqec;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_shots(int threads) {
    qec::MemorySpec spec;
    spec.q_d = 5;
    spec.rounds = 20;
    spec.flips.assign(20, 0);
    spec.l1 = 0.02;
    const Circuit circuit = qec::build_memory_circuit(spec);
    const NoiseModel noise = NoiseModel::memory_defaults();
    const int shots = 4000;

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = run_shots_serial(circuit, noise, 7, shots);
    const double t_serial = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const auto parallel = run_shots(circuit, noise, 7, shots, threads);
    const double t_parallel = seconds_since(t0);

    bool identical = serial.size() == parallel.size();
    for (size_t i = 0; identical && i < serial.size(); ++i) {
        identical = serial[i].outcomes.size() == parallel[i].outcomes.size();
        for (size_t j = 0; identical && j < serial[i].outcomes.size(); ++j) {
            identical = serial[i].outcomes[j].reported == parallel[i].outcomes[j].reported;
        }
    }
    std::printf("memory shots (%d x R=20)   serial %7.2f ms   omp(%d) %7.2f ms   speedup %.2fx   %s\n",
                shots, t_serial * 1e3, threads, t_parallel * 1e3, t_serial / t_parallel,
                identical ? "bit-identical" : "MISMATCH");
}

void bench_trajectories(int threads) {
    lru::DeviceParams device;
    lru::LRUPulseParams pulse;
    lru::TrajectoryOptions opt;
    opt.n_traj = 64;
    opt.seed = 3;

    opt.n_threads = 1;
    auto t0 = std::chrono::steady_clock::now();
    const lru::LruRun serial = lru::evolve_lru_level(device, pulse, 2, opt);
    const double t_serial = seconds_since(t0);
    opt.n_threads = threads;
    t0 = std::chrono::steady_clock::now();
    const lru::LruRun parallel = lru::evolve_lru_level(device, pulse, 2, opt);
    const double t_parallel = seconds_since(t0);

    double max_diff = 0.0;
    for (int s = 0; s < 3; ++s) {
        max_diff = std::max(max_diff, std::abs(serial.transfer[2][static_cast<size_t>(s)] -
                                               parallel.transfer[2][static_cast<size_t>(s)]));
    }
    std::printf("lru trajectories (%d)      serial %7.2f ms   omp(%d) %7.2f ms   speedup %.2fx   max dev %.1e\n",
                opt.n_traj, t_serial * 1e3, threads, t_parallel * 1e3, t_serial / t_parallel,
                max_diff);
}

void bench_decoder_forward() {
    qec::MemoryPlan plan;
    plan.train_flip_vectors = 8;
    plan.val_flip_vectors = 1;
    plan.shots_per_test_spec = 1;
    const NoiseModel noise = NoiseModel::memory_defaults();
    const qec::Dataset ds = qec::generate_memory_dataset(qec::memory_train_specs(plan, 5), 1,
                                                         noise, qec::SplitKind::train, 5, 2);
    const nn::EncodedDataset data = nn::encode_dataset(ds, nn::ReadoutMode::three_level);
    nn::DecoderModel model(nn::ModelConfig::memory_default(nn::ReadoutMode::three_level));
    model.init_weights(11);

    const auto buckets = data.by_rounds();
    auto t0 = std::chrono::steady_clock::now();
    double acc_batched = 0.0;
    for (const auto& [rounds, idx] : buckets) {
        const nn::Batch batch = nn::make_batch(data, idx.data(), static_cast<int>(idx.size()));
        acc_batched += model.forward(batch).p_main.sum();
    }
    const double t_batched = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    double acc_ref = 0.0;
    for (const auto& shot : data.shots) {
        acc_ref += model.forward_reference(shot).p_main(0);
    }
    const double t_ref = seconds_since(t0);
    std::printf("decoder forward (%zu shots) reference %7.2f ms   batched %7.2f ms   speedup %.2fx   |sum diff| %.1e\n",
                data.shots.size(), t_ref * 1e3, t_batched * 1e3, t_ref / t_batched,
                std::abs(acc_batched - acc_ref));
}

}  // namespace

int main(int argc, char** argv) {
    int threads = omp_get_max_threads();
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--threads") == 0) {
            threads = std::atoi(argv[i + 1]);
        }
    }
    std::printf("lruqec benchmarks (threads = %d)\n", threads);
    bench_shots(threads);
    bench_trajectories(threads);
    bench_decoder_forward();
    return 0;
}
