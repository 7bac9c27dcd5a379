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

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "lruqec/analysis/postselect.hpp"
#include "lruqec/analysis/sweep.hpp"
#include "lruqec/io/config.hpp"
#include "lruqec/io/serialization.hpp"
#include "lruqec/io/text_format.hpp"
#include "lruqec/lru/cma_es.hpp"
#include "lruqec/lru/landscape.hpp"
#include "lruqec/nn/decode.hpp"
#include "lruqec/nn/train.hpp"
#include "lruqec/qec/dataset.hpp"
#include "lruqec/qec/leakage.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lruqec;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<uint64_t> seed;
    int jobs = 2;
};

uint64_t require_seed(const CommonArgs& args, const json& cfg) {
    if (args.seed.has_value()) {
        return *args.seed;
    }
    if (cfg.contains("seed")) {
        return cfg.at("seed").get<uint64_t>();
    }
    throw std::invalid_argument("a seed is required (--seed or config key \"seed\")");
}

NoiseModel noise_from_config(const json& cfg, qec::ExperimentKind kind) {
    if (!cfg.contains("noise")) {
        return kind == qec::ExperimentKind::memory ? NoiseModel::memory_defaults()
                                                   : NoiseModel::stability_defaults();
    }
    const json& n = cfg.at("noise");
    if (n.is_string()) {
        const std::string name = n.get<std::string>();
        if (name == "memory_defaults") return NoiseModel::memory_defaults();
        if (name == "stability_defaults") return NoiseModel::stability_defaults();
        if (name == "ideal_memory") return NoiseModel::ideal(qec::MemoryLayout::n_qubits);
        if (name == "ideal_stability") return NoiseModel::ideal(qec::StabilityLayout::n_qubits);
        return io::load_noise(name);  // a path
    }
    return io::noise_from_json(n.dump());
}

qec::MemoryPlan memory_plan_from(const json& cfg) {
    qec::MemoryPlan plan;
    if (!cfg.contains("plan")) {
        return plan;
    }
    const json& p = cfg.at("plan");
    plan.l1 = p.value("l1", plan.l1);
    plan.lru_on = p.value("lru_on", plan.lru_on);
    plan.rx12_theta = p.value("rx12_theta", plan.rx12_theta);
    if (p.contains("bitstrings")) plan.bitstrings = p.at("bitstrings").get<std::vector<uint8_t>>();
    if (p.contains("train_rounds")) plan.train_rounds = p.at("train_rounds").get<std::vector<int>>();
    if (p.contains("test_rounds")) plan.test_rounds = p.at("test_rounds").get<std::vector<int>>();
    plan.train_flip_vectors = p.value("train_flip_vectors", plan.train_flip_vectors);
    plan.val_flip_vectors = p.value("val_flip_vectors", plan.val_flip_vectors);
    plan.shots_per_train_spec = p.value("shots_per_train_spec", plan.shots_per_train_spec);
    plan.shots_per_val_spec = p.value("shots_per_val_spec", plan.shots_per_val_spec);
    plan.shots_per_test_spec = p.value("shots_per_test_spec", plan.shots_per_test_spec);
    plan.train_with_flips = p.value("train_with_flips", plan.train_with_flips);
    return plan;
}

qec::StabilityPlan stability_plan_from(const json& cfg) {
    qec::StabilityPlan plan;
    if (!cfg.contains("plan")) {
        return plan;
    }
    const json& p = cfg.at("plan");
    plan.l1 = p.value("l1", plan.l1);
    plan.lru_on = p.value("lru_on", plan.lru_on);
    plan.rx12_theta = p.value("rx12_theta", plan.rx12_theta);
    if (p.contains("bitstrings")) plan.bitstrings = p.at("bitstrings").get<std::vector<uint8_t>>();
    if (p.contains("rounds")) plan.rounds = p.at("rounds").get<std::vector<int>>();
    plan.shots_per_train_spec = p.value("shots_per_train_spec", plan.shots_per_train_spec);
    plan.shots_per_val_spec = p.value("shots_per_val_spec", plan.shots_per_val_spec);
    plan.shots_per_test_spec = p.value("shots_per_test_spec", plan.shots_per_test_spec);
    return plan;
}

nn::ReadoutMode readout_from(const json& cfg) {
    const std::string mode = cfg.value("readout", "3ro");
    if (mode == "3ro") return nn::ReadoutMode::three_level;
    if (mode == "2ro") return nn::ReadoutMode::two_level;
    throw std::invalid_argument("readout must be \"3ro\" or \"2ro\"");
}

nn::TrainConfig train_config_from(const json& cfg, qec::ExperimentKind kind, uint64_t seed) {
    nn::TrainConfig tc = kind == qec::ExperimentKind::memory ? nn::TrainConfig::memory_default()
                                                             : nn::TrainConfig::stability_default();
    if (cfg.contains("train")) {
        const json& t = cfg.at("train");
        tc.learning_rate = t.value("learning_rate", tc.learning_rate);
        tc.batch_size = t.value("batch_size", tc.batch_size);
        tc.patience = t.value("patience", tc.patience);
        tc.max_epochs = t.value("max_epochs", tc.max_epochs);
        tc.aux_weight = t.value("aux_weight", tc.aux_weight);
    }
    tc.seed = seed;
    return tc;
}

lru::DeviceParams device_from(const json& cfg) {
    lru::DeviceParams dev;
    if (!cfg.contains("device")) {
        return dev;
    }
    const json& d = cfg.at("device");
    dev.omega_ge_ghz = d.value("omega_ge_ghz", dev.omega_ge_ghz);
    dev.anharmonicity_mhz = d.value("anharmonicity_mhz", dev.anharmonicity_mhz);
    dev.omega_r_g_ghz = d.value("omega_r_g_ghz", dev.omega_r_g_ghz);
    dev.chi2_mhz = d.value("chi2_mhz", dev.chi2_mhz);
    dev.kappa_mhz = d.value("kappa_mhz", dev.kappa_mhz);
    dev.t1_us = d.value("t1_us", dev.t1_us);
    dev.t2_star_us = d.value("t2_star_us", dev.t2_star_us);
    dev.fock_cutoff = d.value("fock_cutoff", dev.fock_cutoff);
    dev.r_f = d.value("r_f", dev.r_f);
    return dev;
}

lru::LRUPulseParams pulse_from(const json& cfg) {
    lru::LRUPulseParams p;
    if (!cfg.contains("pulse")) {
        return p;
    }
    const json& j = cfg.at("pulse");
    p.transmon_freq_ghz = j.value("transmon_freq_ghz", p.transmon_freq_ghz);
    p.transmon_amp_rad_ns = j.value("transmon_amp_rad_ns", p.transmon_amp_rad_ns);
    p.resonator_freq_ghz = j.value("resonator_freq_ghz", p.resonator_freq_ghz);
    p.resonator_amp_rad_ns = j.value("resonator_amp_rad_ns", p.resonator_amp_rad_ns);
    p.t_delay_ns = j.value("t_delay_ns", p.t_delay_ns);
    p.pulse_len_ns = j.value("pulse_len_ns", p.pulse_len_ns);
    p.depletion_ns = j.value("depletion_ns", p.depletion_ns);
    p.rise_fall_ns = j.value("rise_fall_ns", p.rise_fall_ns);
    return p;
}

json pulse_to_json(const lru::LRUPulseParams& p) {
    return {{"transmon_freq_ghz", p.transmon_freq_ghz},
            {"transmon_amp_rad_ns", p.transmon_amp_rad_ns},
            {"resonator_freq_ghz", p.resonator_freq_ghz},
            {"resonator_amp_rad_ns", p.resonator_amp_rad_ns},
            {"t_delay_ns", p.t_delay_ns},
            {"pulse_len_ns", p.pulse_len_ns},
            {"depletion_ns", p.depletion_ns},
            {"rise_fall_ns", p.rise_fall_ns}};
}

void write_pl_csv(const std::vector<analysis::PlPoint>& curve, const std::string& path) {
    std::ofstream out(path);
    out << "rounds,shots,failures,p,sigma\n";
    for (const auto& pt : curve) {
        out << pt.rounds << "," << pt.shots << "," << pt.failures << ","
            << io::full_precision(pt.p) << "," << io::full_precision(pt.sigma) << "\n";
    }
}

std::vector<analysis::PlPoint> read_pl_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open curve file " + path);
    }
    std::string line;
    std::getline(in, line);  // header
    std::vector<analysis::PlPoint> curve;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        analysis::PlPoint pt;
        if (std::sscanf(line.c_str(), "%d,%ld,%ld,%lf,%lf", &pt.rounds, &pt.shots, &pt.failures,
                        &pt.p, &pt.sigma) != 5) {
            throw std::runtime_error("malformed curve line: " + line);
        }
        curve.push_back(pt);
    }
    return curve;
}

json fit_to_json(const analysis::FitResult& fit) {
    json j = {
        {"window_start", fit.window_start},
        {"points_used", fit.points_used},
        {"excluded_points", fit.excluded_points},
        {"chi2", fit.chi2},
    };
    switch (fit.kind) {
        case analysis::FitKind::memory:
            j["kind"] = "memory";
            j["epsilon"] = fit.epsilon;
            j["epsilon_sigma"] = fit.epsilon_sigma;
            break;
        case analysis::FitKind::stability:
            j["kind"] = "stability";
            j["gamma"] = fit.gamma;
            j["gamma_sigma"] = fit.gamma_sigma;
            j["amplitude"] = fit.amplitude;
            j["amplitude_sigma"] = fit.amplitude_sigma;
            break;
        case analysis::FitKind::cheating:
            j["kind"] = "cheating";
            j["epsilon"] = fit.epsilon;
            j["epsilon_sigma"] = fit.epsilon_sigma;
            j["p_inf"] = fit.p_inf;
            j["p_inf_sigma"] = fit.p_inf_sigma;
            j["r0"] = fit.r0;
            break;
    }
    return j;
}

int cmd_simulate(const CommonArgs& args) {
    const json cfg = io::load_config(args.config_path);
    const uint64_t seed = require_seed(args, cfg);
    fs::create_directories(args.out_dir);
    const std::string experiment = cfg.value("experiment", "memory");
    std::vector<std::string> outputs;

    if (experiment == "raw") {
        const json& raw = cfg.at("raw");
        const Circuit circuit = raw.at("circuit").is_string()
                                    ? io::load_circuit(raw.at("circuit").get<std::string>())
                                    : io::circuit_from_json(raw.at("circuit").dump());
        NoiseModel noise = NoiseModel::ideal(circuit.n_qutrits);
        if (cfg.contains("noise")) {
            noise = cfg.at("noise").is_string()
                        ? io::load_noise(cfg.at("noise").get<std::string>())
                        : io::noise_from_json(cfg.at("noise").dump());
        }
        const int shots = raw.at("shots").get<int>();
        const auto results = run_shots(circuit, noise, seed, shots, args.jobs);
        io::save_raw_shots(results, (fs::path(args.out_dir) / "shots.txt").string());
        outputs.push_back("shots.txt");
    } else if (experiment == "memory") {
        const NoiseModel noise = noise_from_config(cfg, qec::ExperimentKind::memory);
        const qec::DatasetBundle bundle =
            qec::generate_memory_bundle(memory_plan_from(cfg), noise, seed, args.jobs);
        qec::save_bundle(bundle, args.out_dir);
        outputs = {"train.jsonl", "validation.jsonl", "test.jsonl", "manifest.json"};
    } else if (experiment == "stability") {
        const NoiseModel noise = noise_from_config(cfg, qec::ExperimentKind::stability);
        const qec::DatasetBundle bundle =
            qec::generate_stability_bundle(stability_plan_from(cfg), noise, seed, args.jobs);
        qec::save_bundle(bundle, args.out_dir);
        outputs = {"train.jsonl", "validation.jsonl", "test.jsonl", "manifest.json"};
    } else {
        throw std::invalid_argument("experiment must be memory, stability or raw");
    }
    io::write_run_manifest(args.out_dir, "simulate", cfg, seed, args.jobs, outputs);
    return 0;
}

int cmd_train(const CommonArgs& args) {
    const json cfg = io::load_config(args.config_path);
    const uint64_t seed = require_seed(args, cfg);
    fs::create_directories(args.out_dir);
    const qec::DatasetBundle bundle = qec::load_bundle(cfg.at("data").get<std::string>());
    const nn::ReadoutMode mode = readout_from(cfg);
    const qec::ExperimentKind kind = bundle.train.kind;

    const nn::EncodedDataset train_data = nn::encode_dataset(bundle.train, mode);
    const nn::EncodedDataset val_data = nn::encode_dataset(bundle.validation, mode);
    nn::ModelConfig arch = kind == qec::ExperimentKind::memory
                               ? nn::ModelConfig::memory_default(mode)
                               : nn::ModelConfig::stability_default(mode);
    if (cfg.contains("arch")) {
        const json& a = cfg.at("arch");
        arch.n_lstm = a.value("n_lstm", arch.n_lstm);
        arch.d_lstm = a.value("d_lstm", arch.d_lstm);
        arch.n_eval = a.value("n_eval", arch.n_eval);
        arch.d_eval = a.value("d_eval", arch.d_eval);
    }
    const int ensemble = cfg.value("ensemble", 1);

    std::vector<std::string> outputs;
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, args.jobs))
    for (int m = 0; m < ensemble; ++m) {
        try {
            const nn::TrainConfig tc = train_config_from(
                cfg, kind, Rng::stream(seed, static_cast<uint64_t>(m)).next_u64());
            const nn::TrainResult res = nn::train(arch, train_data, val_data, tc);
            const std::string ck = "model_" + std::to_string(m) + ".json";
            const std::string tr = "trace_" + std::to_string(m) + ".csv";
            res.model.save((fs::path(args.out_dir) / ck).string());
            nn::save_trace_csv(res.trace, (fs::path(args.out_dir) / tr).string());
#pragma omp critical
            {
                outputs.push_back(ck);
                outputs.push_back(tr);
            }
        } catch (...) {
#pragma omp critical
            if (!error) {
                error = std::current_exception();
            }
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    std::sort(outputs.begin(), outputs.end());
    io::write_run_manifest(args.out_dir, "train", cfg, seed, args.jobs, outputs);
    return 0;
}

int cmd_decode(const CommonArgs& args) {
    const json cfg = io::load_config(args.config_path);
    const uint64_t seed = require_seed(args, cfg);
    fs::create_directories(args.out_dir);
    const qec::DatasetBundle bundle = qec::load_bundle(cfg.at("data").get<std::string>());
    const std::string split = cfg.value("split", "test");
    const qec::Dataset& dataset = split == "train"
                                      ? bundle.train
                                      : (split == "validation" ? bundle.validation : bundle.test);
    const nn::EncodedDataset data = nn::encode_dataset(dataset, readout_from(cfg));

    std::vector<nn::DecoderModel> models;
    for (const auto& path : cfg.at("models")) {
        models.push_back(nn::DecoderModel::load(path.get<std::string>()));
    }
    const nn::DecodeResult res = nn::decode_ensemble(models, data);

    std::ofstream shots_out(fs::path(args.out_dir) / "decoded.csv");
    shots_out << "index,rounds,p_out,success,z_raw,z_ideal\n";
    for (size_t i = 0; i < res.p_out.size(); ++i) {
        shots_out << i << "," << dataset.shots[i].rounds << ","
                  << io::full_precision(res.p_out[i]) << "," << int(res.success[i]) << ","
                  << int(dataset.shots[i].z_raw) << "," << int(dataset.shots[i].z_ideal) << "\n";
    }
    write_pl_csv(nn::logical_error_by_rounds(dataset, res.success),
                 (fs::path(args.out_dir) / "pl_curve.csv").string());
    io::write_run_manifest(args.out_dir, "decode", cfg, seed, args.jobs,
                           {"decoded.csv", "pl_curve.csv"});
    return 0;
}

int cmd_fit(const CommonArgs& args) {
    const json cfg = io::load_config(args.config_path);
    const uint64_t seed = args.seed.has_value() || cfg.contains("seed") ? require_seed(args, cfg) : 0;
    fs::create_directories(args.out_dir);
    const auto curve = read_pl_csv(cfg.at("curve").get<std::string>());
    const std::string kind = cfg.value("kind", "memory");
    analysis::FitResult fit;
    if (kind == "memory") {
        fit = analysis::fit_memory(curve, cfg.value("window_start", 5));
    } else if (kind == "stability") {
        fit = analysis::fit_stability(curve, cfg.value("window_start", 10));
    } else if (kind == "cheating") {
        fit = analysis::fit_cheating(curve, cfg.value("window_start", 1));
    } else {
        throw std::invalid_argument("fit kind must be memory, stability or cheating");
    }
    std::ofstream out(fs::path(args.out_dir) / "fit.json");
    out << fit_to_json(fit).dump(2) << "\n";
    io::write_run_manifest(args.out_dir, "fit", cfg, seed, args.jobs, {"fit.json"});
    return 0;
}

int cmd_sweep(const CommonArgs& args) {
    const json cfg = io::load_config(args.config_path);
    const uint64_t seed = require_seed(args, cfg);
    fs::create_directories(args.out_dir);

    analysis::SweepConfig sc;
    const std::string kind = cfg.value("kind", "memory");
    sc.kind = kind == "memory" ? qec::ExperimentKind::memory : qec::ExperimentKind::stability;
    const std::string axis = cfg.value("axis", "l_cz");
    if (axis == "l_cz") sc.axis = analysis::SweepAxis::l_cz;
    else if (axis == "l_msmt") sc.axis = analysis::SweepAxis::l_msmt;
    else if (axis == "l_1q") sc.axis = analysis::SweepAxis::l_1q;
    else if (axis == "residual_f") sc.axis = analysis::SweepAxis::residual_f;
    else if (axis == "ef_infidelity") sc.axis = analysis::SweepAxis::ef_infidelity;
    else throw std::invalid_argument("unknown sweep axis " + axis);
    sc.grid = cfg.at("grid").get<std::vector<double>>();
    if (cfg.contains("variants")) {
        sc.variants.clear();
        for (const auto& v : cfg.at("variants")) {
            sc.variants.push_back({v.at("lru_on").get<bool>(),
                                   v.at("readout").get<std::string>() == "3ro"
                                       ? nn::ReadoutMode::three_level
                                       : nn::ReadoutMode::two_level});
        }
    }
    sc.memory_plan = memory_plan_from(cfg);
    sc.stability_plan = stability_plan_from(cfg);
    sc.train = train_config_from(cfg, sc.kind, seed);
    sc.ensemble_size = cfg.value("ensemble", 1);
    sc.seed = seed;
    sc.threads = args.jobs;

    const auto rows = analysis::sweep_report(sc);
    analysis::save_sweep_csv(rows, sc.kind, (fs::path(args.out_dir) / "sweep.csv").string());
    io::write_run_manifest(args.out_dir, "sweep", cfg, seed, args.jobs, {"sweep.csv"});
    return 0;
}

int cmd_lru_landscape(const CommonArgs& args) {
    const json cfg = io::load_config(args.config_path);
    const uint64_t seed = require_seed(args, cfg);
    fs::create_directories(args.out_dir);
    const lru::DeviceParams dev = device_from(cfg);
    const lru::LRUPulseParams pulse = pulse_from(cfg);

    lru::LandscapeConfig lc;
    const std::string axes = cfg.value("axes", "amp_amp");
    if (axes == "amp_amp") lc.axes = lru::LandscapeAxes::amp_amp;
    else if (axes == "freq_delay") lc.axes = lru::LandscapeAxes::freq_delay;
    else if (axes == "delay_only") lc.axes = lru::LandscapeAxes::delay_only;
    else throw std::invalid_argument("unknown landscape axes " + axes);
    lc.x_values = cfg.at("x_values").get<std::vector<double>>();
    lc.y_values = cfg.at("y_values").get<std::vector<double>>();
    lc.trajectories.n_traj = cfg.value("n_traj", 128);
    lc.trajectories.dt_ns = cfg.value("dt_ns", 0.25);
    lc.trajectories.seed = seed;
    lc.trajectories.n_threads = args.jobs;
    lc.noise_scale = cfg.value("noise_scale", 0.0);

    const lru::Landscape land = lru::sweep_landscape(dev, pulse, lc);
    lru::save_landscape_csv(land, (fs::path(args.out_dir) / "landscape.csv").string());
    io::write_run_manifest(args.out_dir, "lru-landscape", cfg, seed, args.jobs,
                           {"landscape.csv"});
    return 0;
}

int cmd_calibrate(const CommonArgs& args) {
    const json cfg = io::load_config(args.config_path);
    const uint64_t seed = require_seed(args, cfg);
    fs::create_directories(args.out_dir);
    const lru::DeviceParams dev = device_from(cfg);
    const lru::LRUPulseParams initial = pulse_from(cfg);

    lru::CalibrationConfig cc;
    cc.max_generations = cfg.value("generations", 25);
    cc.n_traj = cfg.value("n_traj", 48);
    cc.noise_scale = cfg.value("noise_scale", 0.0);
    cc.dt_ns = cfg.value("dt_ns", 0.25);
    cc.seed = seed;
    cc.n_threads = args.jobs;

    const lru::CalibrationResult res = lru::calibrate_cma(dev, initial, cc);
    json out = {
        {"initial_cost", res.initial_cost},
        {"best_cost", res.best_cost},
        {"evaluations", res.evaluations},
        {"pulse", pulse_to_json(res.pulse)},
    };
    std::ofstream pulse_out(fs::path(args.out_dir) / "calibrated_pulse.json");
    pulse_out << out.dump(2) << "\n";
    std::ofstream trace_out(fs::path(args.out_dir) / "cma_trace.csv");
    trace_out << "generation,best_cost\n";
    for (size_t g = 0; g < res.trace.size(); ++g) {
        trace_out << g << "," << io::full_precision(res.trace[g]) << "\n";
    }
    io::write_run_manifest(args.out_dir, "calibrate", cfg, seed, args.jobs,
                           {"calibrated_pulse.json", "cma_trace.csv"});
    return 0;
}

int cmd_defaults() {
    const lru::DeviceParams dev;
    const lru::LRUPulseParams pulse;
    json j = {
        {"device",
         {{"omega_ge_ghz", dev.omega_ge_ghz},
          {"anharmonicity_mhz", dev.anharmonicity_mhz},
          {"omega_r_g_ghz", dev.omega_r_g_ghz},
          {"chi2_mhz", dev.chi2_mhz},
          {"kappa_mhz", dev.kappa_mhz},
          {"t1_us", dev.t1_us},
          {"t2_star_us", dev.t2_star_us},
          {"fock_cutoff", dev.fock_cutoff},
          {"r_f", dev.r_f}}},
        {"pulse", pulse_to_json(pulse)},
        {"durations",
         {{"single_qubit_ns", 20.0}, {"two_qubit_ns", 60.0}, {"measurement_ns", 700.0}}},
        {"noise_memory", json::parse(io::noise_to_json(NoiseModel::memory_defaults()))},
        {"noise_stability", json::parse(io::noise_to_json(NoiseModel::stability_defaults()))},
        {"noise_lru_calibration",
         json::parse(io::noise_to_json(NoiseModel::lru_calibration_defaults(1)))},
        {"memory_l1_grid", qec::memory_l1_grid()},
        {"stability_l1_grid", qec::stability_l1_grid()},
        {"memory_train_rounds", qec::memory_train_rounds()},
        {"memory_test_rounds", qec::memory_test_rounds()},
        {"stability_rounds", qec::stability_rounds()},
    };
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Leakage-aware QEC simulation, decoding and analysis toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string subcommand;
    for (const char* name : {"simulate", "train", "decode", "fit", "sweep", "lru-landscape",
                             "calibrate", "defaults"}) {
        CLI::App* sub = app.add_subcommand(name);
        if (std::string(name) != "defaults") {
            sub->add_option("--config", args.config_path, "run configuration (JSON)")->required();
            sub->add_option("--out", args.out_dir, "output directory");
            sub->add_option("--seed", args.seed, "master seed (overrides the config)");
            sub->add_option("--jobs", args.jobs, "worker parallelism");
        }
        sub->callback([&subcommand, name]() { subcommand = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (subcommand == "simulate") return cmd_simulate(args);
        if (subcommand == "train") return cmd_train(args);
        if (subcommand == "decode") return cmd_decode(args);
        if (subcommand == "fit") return cmd_fit(args);
        if (subcommand == "sweep") return cmd_sweep(args);
        if (subcommand == "lru-landscape") return cmd_lru_landscape(args);
        if (subcommand == "calibrate") return cmd_calibrate(args);
        if (subcommand == "defaults") return cmd_defaults();
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return 0;
}
