// Copyright 2026 The repro-bound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Heterogeneous synthetic registers shared by the CLI tests and the acceptance run.

#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

#include "repro/config.hpp"

namespace repro::synth {

// Readout asymmetry up to 0.1 and gate errors up to 2 degrees.
inline DeviceConfig heterogeneous_device(int qubits, int experiments, std::uint64_t shots, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x5eed);
    std::uniform_real_distribution<double> f0(0.95, 0.995);
    std::uniform_real_distribution<double> asym(0.0, 0.1);
    std::uniform_real_distribution<double> angle(-2.0, 2.0);
    DeviceConfig cfg;
    cfg.name = "synthetic-" + std::to_string(qubits);
    cfg.experiments = experiments;
    cfg.shots = shots;
    cfg.seed = seed;
    for (int q = 0; q < qubits; ++q) {
        QubitSpec spec;
        spec.index = q;
        spec.params.f0 = f0(rng);
        spec.params.f1 = spec.params.f0 - asym(rng);
        spec.params.theta = angle(rng) * std::numbers::pi / 180.0;
        cfg.qubits.push_back(spec);
    }
    return cfg;
}

inline void write_device(const DeviceConfig &cfg, const std::filesystem::path &path) {
    std::ofstream(path) << device_config_to_json(cfg).dump(2) << "\n";
}

inline std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace repro::synth
