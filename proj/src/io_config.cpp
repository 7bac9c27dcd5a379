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

#include "lruqec/io/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

namespace lruqec::io {

namespace {

using nlohmann::json;

json load_with_includes(const std::string& path, std::set<std::string>& seen) {
    namespace fs = std::filesystem;
    const std::string canonical = fs::weakly_canonical(path).string();
    if (!seen.insert(canonical).second) {
        throw std::runtime_error("config include cycle at " + path);
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config " + path);
    }
    json j;
    in >> j;
    if (!j.is_object()) {
        throw std::runtime_error("config root must be a JSON object: " + path);
    }
    if (j.contains("include")) {
        const std::string inc = j.at("include").get<std::string>();
        const fs::path inc_path = fs::path(path).parent_path() / inc;
        json base = load_with_includes(inc_path.string(), seen);
        j.erase("include");
        return merge_config(std::move(base), j);
    }
    return j;
}

}  // namespace

json load_config(const std::string& path) {
    std::set<std::string> seen;
    return load_with_includes(path, seen);
}

json merge_config(json base, const json& overlay) {
    if (!base.is_object() || !overlay.is_object()) {
        return overlay;
    }
    for (auto it = overlay.begin(); it != overlay.end(); ++it) {
        if (base.contains(it.key())) {
            base[it.key()] = merge_config(base[it.key()], it.value());
        } else {
            base[it.key()] = it.value();
        }
    }
    return base;
}

std::string content_hash(const json& config) {
    const std::string text = config.dump();
    uint64_t h = UINT64_C(0xcbf29ce484222325);
    for (unsigned char c : text) {
        h ^= c;
        h *= UINT64_C(0x100000001b3);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_run_manifest(const std::string& out_dir, const std::string& command,
                        const json& resolved_config, uint64_t seed, int jobs,
                        const std::vector<std::string>& outputs) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    json manifest = {
        {"schema_version", 1},
        {"command", command},
        {"seed", seed},
        {"jobs", jobs},
        {"config", resolved_config},
        {"config_hash", content_hash(resolved_config)},
        {"outputs", outputs},
    };
    std::ofstream out(fs::path(out_dir) / "run_manifest.json");
    if (!out) {
        throw std::runtime_error("cannot write run manifest in " + out_dir);
    }
    out << manifest.dump(2) << "\n";
}

}  // namespace lruqec::io
