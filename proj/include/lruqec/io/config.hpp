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

#include <json.hpp>

namespace lruqec::io {

/// Load a JSON run configuration. A top-level "include" key names another
/// config (path relative to the including file) that is loaded first; the
/// including file's keys then override the included ones (deep merge).
/// Include chains are followed recursively; cycles are an error.
nlohmann::json load_config(const std::string& path);

/// Deep merge: `overlay` wins; objects merge recursively.
nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& overlay);

/// FNV-1a hash of the canonical (dumped) form, as a 16-hex-digit string;
/// stamped into run manifests so outputs identify their exact inputs.
std::string content_hash(const nlohmann::json& config);

/// Write the run manifest (command, resolved config, seed, jobs, outputs).
void write_run_manifest(const std::string& out_dir, const std::string& command,
                        const nlohmann::json& resolved_config, uint64_t seed, int jobs,
                        const std::vector<std::string>& outputs);

}  // namespace lruqec::io
