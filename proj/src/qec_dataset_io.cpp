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

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "lruqec/io/text_format.hpp"
#include "lruqec/qec/dataset.hpp"

namespace lruqec::qec {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

std::string digits(const std::vector<uint8_t>& v) {
    std::string s;
    s.reserve(v.size());
    for (uint8_t b : v) {
        s.push_back(static_cast<char>('0' + b));
    }
    return s;
}

std::vector<uint8_t> from_digits(const std::string& s) {
    std::vector<uint8_t> v;
    v.reserve(s.size());
    for (char c : s) {
        if (c < '0' || c > '2') {
            throw std::runtime_error("invalid digit in dataset record");
        }
        v.push_back(static_cast<uint8_t>(c - '0'));
    }
    return v;
}

const char* split_name(SplitKind s) {
    switch (s) {
        case SplitKind::train:
            return "train";
        case SplitKind::validation:
            return "validation";
        case SplitKind::test:
            return "test";
    }
    return "?";
}

SplitKind split_from_name(const std::string& s) {
    if (s == "train") return SplitKind::train;
    if (s == "validation") return SplitKind::validation;
    if (s == "test") return SplitKind::test;
    throw std::runtime_error("unknown split name: " + s);
}

}  // namespace

void save_dataset(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    json header = {
        {"schema_version", kSchemaVersion},
        {"kind", dataset.kind == ExperimentKind::memory ? "memory" : "stability"},
        {"split", split_name(dataset.split)},
        {"seed", dataset.seed},
        {"n_shots", dataset.shots.size()},
        {"description", dataset.description},
    };
    out << header.dump() << "\n";
    for (const auto& r : dataset.shots) {
        json j = {
            {"id", r.spec_id},
            {"R", r.rounds},
            {"q", r.init_bits},
            {"lru", r.lru_on},
            {"l1", io::full_precision(r.l1)},
            {"m3", digits(r.m3)},
            {"d", digits(r.detectors)},
            {"l", digits(r.flags)},
            {"fd", digits(r.final_data)},
            {"s", digits(r.stabilizers)},
            {"f", digits(r.flips)},
            {"zr", r.z_raw},
            {"zi", r.z_ideal},
        };
        out << j.dump() << "\n";
    }
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty dataset file " + path);
    }
    const json header = json::parse(line);
    if (header.at("schema_version").get<int>() != kSchemaVersion) {
        throw std::runtime_error("unsupported dataset schema version in " + path);
    }
    Dataset ds;
    ds.kind = header.at("kind").get<std::string>() == "memory" ? ExperimentKind::memory
                                                               : ExperimentKind::stability;
    ds.split = split_from_name(header.at("split").get<std::string>());
    ds.seed = header.at("seed").get<uint64_t>();
    ds.description = header.value("description", "");
    const size_t n = header.at("n_shots").get<size_t>();
    ds.shots.reserve(n);

    const int n_measure = ds.kind == ExperimentKind::memory ? MemoryLayout::n_measure
                                                            : StabilityLayout::n_measure;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const json j = json::parse(line);
        ShotRecord r;
        r.kind = ds.kind;
        r.spec_id = j.at("id").get<uint32_t>();
        r.rounds = j.at("R").get<int>();
        r.n_measure = n_measure;
        r.init_bits = j.at("q").get<uint8_t>();
        r.lru_on = j.at("lru").get<uint8_t>();
        r.l1 = io::parse_double(j.at("l1").get<std::string>());
        r.m3 = from_digits(j.at("m3").get<std::string>());
        r.detectors = from_digits(j.at("d").get<std::string>());
        r.flags = from_digits(j.at("l").get<std::string>());
        r.final_data = from_digits(j.at("fd").get<std::string>());
        r.stabilizers = from_digits(j.at("s").get<std::string>());
        r.flips = from_digits(j.at("f").get<std::string>());
        r.z_raw = j.at("zr").get<uint8_t>();
        r.z_ideal = j.at("zi").get<uint8_t>();
        // Rebuild the binary outcomes from the stored ternary ones (with the
        // frame corrections of record_from_*), then check the stored
        // detectors are reproducible.
        r.m.resize(r.m3.size());
        for (int ri = 0; ri < r.rounds; ++ri) {
            for (int a = 0; a < n_measure; ++a) {
                uint8_t b = r.m3[static_cast<size_t>(ri * n_measure + a)] >= 1 ? 1 : 0;
                if (ds.kind == ExperimentKind::stability && (a == 0 || a == n_measure - 1)) {
                    b ^= static_cast<uint8_t>(((ri + 1) * ri / 2) % 2);
                }
                r.m[static_cast<size_t>(ri * n_measure + a)] = b;
            }
        }
        if (compute_detectors(r, ds.kind) != r.detectors) {
            throw std::runtime_error("stored detectors do not match outcomes in " + path);
        }
        ds.shots.push_back(std::move(r));
    }
    if (ds.shots.size() != n) {
        throw std::runtime_error("dataset record count mismatch in " + path);
    }
    return ds;
}

void save_bundle(const DatasetBundle& bundle, const std::string& directory) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    save_dataset(bundle.train, (fs::path(directory) / "train.jsonl").string());
    save_dataset(bundle.validation, (fs::path(directory) / "validation.jsonl").string());
    save_dataset(bundle.test, (fs::path(directory) / "test.jsonl").string());
    json manifest = {
        {"schema_version", kSchemaVersion},
        {"kind", bundle.train.kind == ExperimentKind::memory ? "memory" : "stability"},
        {"splits",
         {{"train", "train.jsonl"},
          {"validation", "validation.jsonl"},
          {"test", "test.jsonl"}}},
        {"seeds",
         {{"train", bundle.train.seed},
          {"validation", bundle.validation.seed},
          {"test", bundle.test.seed}}},
        {"counts",
         {{"train", bundle.train.shots.size()},
          {"validation", bundle.validation.shots.size()},
          {"test", bundle.test.shots.size()}}},
    };
    std::ofstream out(fs::path(directory) / "manifest.json");
    out << manifest.dump(2) << "\n";
}

DatasetBundle load_bundle(const std::string& directory) {
    namespace fs = std::filesystem;
    std::ifstream in(fs::path(directory) / "manifest.json");
    if (!in) {
        throw std::runtime_error("missing manifest.json in " + directory);
    }
    json manifest;
    in >> manifest;
    if (manifest.at("schema_version").get<int>() != kSchemaVersion) {
        throw std::runtime_error("unsupported bundle schema version in " + directory);
    }
    DatasetBundle b;
    b.train = load_dataset(
        (fs::path(directory) / manifest.at("splits").at("train").get<std::string>()).string());
    b.validation = load_dataset(
        (fs::path(directory) / manifest.at("splits").at("validation").get<std::string>()).string());
    b.test = load_dataset(
        (fs::path(directory) / manifest.at("splits").at("test").get<std::string>()).string());
    return b;
}

}  // namespace lruqec::qec
