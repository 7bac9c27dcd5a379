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

#include <cstdint>
#include <map>
#include <vector>

#include "lruqec/circuit.hpp"
#include "lruqec/qutrit_register.hpp"
#include "lruqec/rng.hpp"

namespace lruqec {

struct MeasureOutcome {
    int qubit = 0;
    int projected = 0;  // Born-rule projection result
    int reported = 0;   // after assignment sampling (ternary; map 2 -> 1 for 2RO)
    int post = 0;       // physical level after the population transfer step
    MeasureMode mode = MeasureMode::standard;
    ReadoutLevels readout = ReadoutLevels::three_level;
};

struct RawShot {
    std::vector<MeasureOutcome> outcomes;  // in circuit order
};

/// Per-basis-state total jump rates for one subset of qubits, grouped by
/// distinct rate value. The grouping shrinks the waiting-time survival sum
/// from 3^n terms to the handful of distinct rates.
struct RateTable {
    std::vector<uint16_t> group;  // basis index -> group id
    std::vector<double> rate;     // group id -> total out-rate (1/ns)
    double max_rate = 0.0;

    static RateTable build(const NoiseModel& noise, int n, uint64_t qubit_mask);
};

/// Monte-Carlo jump/no-jump decoherence over a fixed interval with exact
/// exponential waiting-time sampling (the Hamiltonian vanishes during idles,
/// so no-jump evolution is diagonal and the jump time can be solved for
/// directly instead of stepping in small increments).
void apply_decoherence(QutritRegister& state, const RateTable& table, const NoiseModel& noise,
                       uint64_t qubit_mask, double duration_ns, Rng& rng);

/// Convenience overload building the rate table on the fly.
void apply_decoherence(QutritRegister& state, const std::vector<int>& qubits, double duration_ns,
                       const NoiseModel& noise, Rng& rng);

/// Projective three-outcome measurement of qubit q followed by assignment
/// sampling and the population transfer step. Mutates the register.
MeasureOutcome measure(QutritRegister& state, int q, const NoiseModel& noise, MeasureMode mode,
                       ReadoutLevels readout, Rng& rng);

/// Precomputed per-(circuit, noise) execution plan: moment durations and the
/// decoherence rate tables for every qubit mask the circuit needs.
class ShotPlan {
  public:
    /// `shared_tables` may carry rate tables built for the same noise model
    /// (keyed by qubit mask); they are then reused instead of rebuilt. Used
    /// when a batch of circuits differs only in gate parameters and length.
    ShotPlan(const Circuit& circuit, const NoiseModel& noise,
             const std::map<uint64_t, RateTable>* shared_tables = nullptr);

    const std::map<uint64_t, RateTable>& tables() const { return tables_; }

    /// Execute one shot. Pure given the rng stream. If `final_state` is
    /// non-null the end-of-circuit register is written there.
    RawShot run(Rng& rng, QutritRegister* final_state = nullptr) const;

    const Circuit& circuit() const { return *circuit_; }
    const NoiseModel& noise() const { return *noise_; }

  private:
    const RateTable& table_for(uint64_t mask) const;

    const Circuit* circuit_;
    const NoiseModel* noise_;
    const std::map<uint64_t, RateTable>* shared_tables_;
    std::map<uint64_t, RateTable> tables_;
    std::vector<double> moment_ns_;
    uint64_t full_mask_ = 0;
};

/// OpenMP-parallel shot batch; shot i consumes the dedicated rng stream
/// (master_seed, i), so the output is identical for any thread count.
std::vector<RawShot> run_shots(const Circuit& circuit, const NoiseModel& noise,
                               uint64_t master_seed, int n_shots, int n_threads);

/// Plain-loop reference used by the tests and the benchmark; must produce
/// bit-identical results to run_shots.
std::vector<RawShot> run_shots_serial(const Circuit& circuit, const NoiseModel& noise,
                                      uint64_t master_seed, int n_shots);

}  // namespace lruqec
