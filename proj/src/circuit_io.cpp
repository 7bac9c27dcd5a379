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

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "lruqec/io/serialization.hpp"

namespace lruqec::io {

namespace {

using nlohmann::json;

const char* op_name(OpKind k) {
    switch (k) {
        case OpKind::prep_ground:
            return "prep_ground";
        case OpKind::rot_ge:
            return "rot_ge";
        case OpKind::rot_ef:
            return "rot_ef";
        case OpKind::echo_x:
            return "echo_x";
        case OpKind::cz:
            return "cz";
        case OpKind::measure:
            return "measure";
        case OpKind::idle:
            return "idle";
    }
    return "?";
}

OpKind op_from_name(const std::string& s) {
    if (s == "prep_ground") return OpKind::prep_ground;
    if (s == "rot_ge") return OpKind::rot_ge;
    if (s == "rot_ef") return OpKind::rot_ef;
    if (s == "echo_x") return OpKind::echo_x;
    if (s == "cz") return OpKind::cz;
    if (s == "measure") return OpKind::measure;
    if (s == "idle") return OpKind::idle;
    throw std::runtime_error("unknown op kind: " + s);
}

json instruction_to_json(const Instruction& op) {
    json j;
    j["op"] = op_name(op.kind);
    j["qubits"] = op.qubits;
    switch (op.kind) {
        case OpKind::rot_ge:
            j["angle"] = op.angle;
            j["axis_phi"] = op.axis_phi;
            break;
        case OpKind::rot_ef:
            j["angle"] = op.angle;
            break;
        case OpKind::cz:
            j["l1"] = op.cz.l1;
            j["phi"] = op.cz.phi;
            break;
        case OpKind::measure:
            j["mode"] = op.mode == MeasureMode::lru ? "lru" : "standard";
            j["readout"] = op.readout == ReadoutLevels::three_level ? "3ro" : "2ro";
            break;
        case OpKind::idle:
            j["duration_ns"] = op.idle_ns;
            break;
        default:
            break;
    }
    return j;
}

Instruction instruction_from_json(const json& j) {
    Instruction op;
    op.kind = op_from_name(j.at("op").get<std::string>());
    op.qubits = j.at("qubits").get<std::vector<int>>();
    switch (op.kind) {
        case OpKind::rot_ge:
            op.angle = j.at("angle").get<double>();
            op.axis_phi = j.at("axis_phi").get<double>();
            break;
        case OpKind::rot_ef:
            op.angle = j.at("angle").get<double>();
            break;
        case OpKind::cz:
            op.cz.l1 = j.at("l1").get<double>();
            op.cz.phi = j.value("phi", Rng::kPi / 2.0);
            break;
        case OpKind::measure:
            op.mode = j.at("mode").get<std::string>() == "lru" ? MeasureMode::lru
                                                               : MeasureMode::standard;
            op.readout = j.at("readout").get<std::string>() == "3ro" ? ReadoutLevels::three_level
                                                                     : ReadoutLevels::two_level;
            break;
        case OpKind::idle:
            op.idle_ns = j.at("duration_ns").get<double>();
            break;
        default:
            break;
    }
    return op;
}

json matrix3_to_json(const StochasticMatrix3& m) {
    json rows = json::array();
    for (int s = 0; s < 3; ++s) {
        json row = json::array();
        for (int o = 0; o < 3; ++o) {
            row.push_back(m(s, o));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

StochasticMatrix3 matrix3_from_json(const json& rows) {
    std::array<std::array<double, 3>, 3> m{};
    for (int s = 0; s < 3; ++s) {
        for (int o = 0; o < 3; ++o) {
            m[static_cast<size_t>(s)][static_cast<size_t>(o)] =
                rows.at(static_cast<size_t>(s)).at(static_cast<size_t>(o)).get<double>();
        }
    }
    return StochasticMatrix3::from_rows(m);
}

}  // namespace

std::string circuit_to_json(const Circuit& circuit) {
    json j;
    j["schema_version"] = 1;
    j["n_qutrits"] = circuit.n_qutrits;
    json moments = json::array();
    for (const auto& m : circuit.moments) {
        json ops = json::array();
        for (const auto& op : m.ops) {
            ops.push_back(instruction_to_json(op));
        }
        moments.push_back(std::move(ops));
    }
    j["moments"] = std::move(moments);
    return j.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("schema_version").get<int>() != 1) {
        throw std::runtime_error("unsupported circuit schema version");
    }
    Circuit c;
    c.n_qutrits = j.at("n_qutrits").get<int>();
    for (const auto& mj : j.at("moments")) {
        Moment m;
        for (const auto& oj : mj) {
            m.ops.push_back(instruction_from_json(oj));
        }
        c.moments.push_back(std::move(m));
    }
    c.validate();
    return c;
}

void save_circuit(const Circuit& circuit, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << circuit_to_json(circuit) << "\n";
}

Circuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open circuit file " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return circuit_from_json(text);
}

std::string noise_to_json(const NoiseModel& noise) {
    json j;
    j["schema_version"] = 1;
    j["durations"] = {{"single_qubit_ns", noise.durations.single_qubit_ns},
                      {"two_qubit_ns", noise.durations.two_qubit_ns},
                      {"measurement_ns", noise.durations.measurement_ns}};
    json qubits = json::array();
    for (const auto& q : noise.qubits) {
        qubits.push_back({{"t1_us", q.t1_us},
                          {"t2_star_us", q.t2_star_us},
                          {"assignment_lru", matrix3_to_json(q.assignment_lru)},
                          {"assignment_standard", matrix3_to_json(q.assignment_standard)},
                          {"transfer_lru", matrix3_to_json(q.transfer_lru)},
                          {"transfer_standard", matrix3_to_json(q.transfer_standard)}});
    }
    j["qubits"] = std::move(qubits);
    return j.dump(2);
}

NoiseModel noise_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("schema_version").get<int>() != 1) {
        throw std::runtime_error("unsupported noise schema version");
    }
    NoiseModel n;
    n.durations.single_qubit_ns = j.at("durations").at("single_qubit_ns").get<double>();
    n.durations.two_qubit_ns = j.at("durations").at("two_qubit_ns").get<double>();
    n.durations.measurement_ns = j.at("durations").at("measurement_ns").get<double>();
    for (const auto& qj : j.at("qubits")) {
        QubitNoise q;
        q.t1_us = qj.at("t1_us").get<double>();
        q.t2_star_us = qj.at("t2_star_us").get<double>();
        q.assignment_lru = matrix3_from_json(qj.at("assignment_lru"));
        q.assignment_standard = matrix3_from_json(qj.at("assignment_standard"));
        q.transfer_lru = matrix3_from_json(qj.at("transfer_lru"));
        q.transfer_standard = matrix3_from_json(qj.at("transfer_standard"));
        n.qubits.push_back(std::move(q));
    }
    n.validate();
    return n;
}

void save_noise(const NoiseModel& noise, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << noise_to_json(noise) << "\n";
}

NoiseModel load_noise(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open noise file " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return noise_from_json(text);
}

void save_raw_shots(const std::vector<RawShot>& shots, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    const size_t n_outcomes = shots.empty() ? 0 : shots.front().outcomes.size();
    out << "# lruqec raw shots v1 n_outcomes=" << n_outcomes << "\n";
    for (size_t i = 0; i < shots.size(); ++i) {
        out << i;
        for (const auto& o : shots[i].outcomes) {
            out << " " << o.reported;
        }
        out << "\n";
    }
}

}  // namespace lruqec::io
