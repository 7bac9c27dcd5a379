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

#include "lruqec/circuit.hpp"
#include "lruqec/simulator.hpp"

namespace lruqec::io {

// Circuit and noise-model schemas are documented in docs/file_formats.md.
std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const std::string& text);
void save_circuit(const Circuit& circuit, const std::string& path);
Circuit load_circuit(const std::string& path);

std::string noise_to_json(const NoiseModel& noise);
NoiseModel noise_from_json(const std::string& text);
void save_noise(const NoiseModel& noise, const std::string& path);
NoiseModel load_noise(const std::string& path);

/// Raw shot stream: one line per shot, "<index> <o1> <o2> ...", reported
/// ternary outcomes in circuit order, after a single header line.
void save_raw_shots(const std::vector<RawShot>& shots, const std::string& path);

}  // namespace lruqec::io
