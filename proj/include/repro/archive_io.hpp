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

/// \file
/// On-disk run directory:
///
///   manifest.json                      plan, seed, version, UTC timestamps, completion flag
///   blocks/<kind>_<qubit>_<l>.bin      u64 little-endian shot count, then packed bits
///   counts.csv                         kind,qubit,experiment,ones,shots
///
/// The manifest is written first with "complete": false and rewritten with
/// "complete": true only after every block and counts.csv are on disk, so an
/// interrupted run is recognizable.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "repro/config.hpp"
#include "repro/csv.hpp"
#include "repro/errors.hpp"
#include "repro/sampler.hpp"
#include "repro/version.hpp"

namespace repro {

inline constexpr const char *kManifestSchema = "repro-bound/manifest/1";

inline std::string block_file_name(CircuitKind kind, int qubit, int experiment) {
    return std::string(circuit_kind_name(kind)) + "_" + std::to_string(qubit) + "_" + std::to_string(experiment) +
           ".bin";
}

inline std::vector<std::uint8_t> encode_block(const ShotBlock &block) {
    std::vector<std::uint8_t> bytes(8);
    for (int i = 0; i < 8; ++i) {
        bytes[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(block.shots() >> (8 * i));
    }
    const auto packed = block.packed();
    bytes.insert(bytes.end(), packed.begin(), packed.end());
    return bytes;
}

/// Inverse of encode_block. Throws incomplete on truncated or oversized data.
inline ShotBlock decode_block(std::span<const std::uint8_t> bytes, CircuitKind kind, int qubit, int experiment) {
    if (bytes.size() < 8) {
        throw Error(ErrorKind::incomplete, "block header truncated");
    }
    std::uint64_t shots = 0;
    for (int i = 0; i < 8; ++i) {
        shots |= static_cast<std::uint64_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
    }
    if (bytes.size() - 8 != (shots + 7) / 8) {
        throw Error(ErrorKind::incomplete, "block payload has " + std::to_string(bytes.size() - 8) +
                                               " bytes, header promises " + std::to_string(shots) + " shots");
    }
    return ShotBlock(kind, qubit, experiment, shots, std::vector<std::uint8_t>(bytes.begin() + 8, bytes.end()));
}

namespace detail {

inline void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
        throw Error(ErrorKind::io, "write to " + path.string() + " failed");
    }
}

inline void write_text(const std::filesystem::path &path, const std::string &text) {
    write_file(path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

inline std::vector<std::uint8_t> read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::incomplete, "missing " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline nlohmann::json manifest_json(const RunArchive &archive, const std::string &name) {
    DeviceConfig cfg;
    cfg.name = name;
    cfg.qubits = archive.plan.qubits;
    cfg.experiments = archive.plan.experiments;
    cfg.shots = archive.plan.shots;
    cfg.seed = archive.plan.seed;
    nlohmann::json plan = device_config_to_json(cfg);
    return {{"schema", kManifestSchema},
            {"toolkit_version", archive.manifest.toolkit_version},
            {"name", name},
            {"seed", archive.plan.seed},
            {"device", plan},
            {"block_count", archive.plan.block_count()},
            {"drift", static_cast<bool>(archive.plan.drift)},
            {"started_utc", archive.manifest.started_utc},
            {"finished_utc", archive.manifest.finished_utc},
            {"complete", archive.manifest.complete}};
}

}  // namespace detail

/// Writes the archive as a run directory. On failure the manifest keeps
/// "complete": false and an io error is thrown.
inline void write_run_directory(const RunArchive &archive, const std::filesystem::path &dir, const std::string &name) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir / "blocks", ec);
    if (ec) {
        throw Error(ErrorKind::io, "cannot create " + (dir / "blocks").string() + ": " + ec.message());
    }
    RunArchive partial_view{archive.plan, {}, archive.manifest};
    partial_view.manifest.complete = false;
    detail::write_text(dir / "manifest.json", detail::manifest_json(partial_view, name).dump(2) + "\n");

    CsvWriter counts(dir / "counts.csv");
    counts.row({"kind", "qubit", "experiment", "ones", "shots"});
    for (const ShotBlock &block : archive.blocks) {
        detail::write_file(dir / "blocks" / block_file_name(block.kind(), block.qubit(), block.experiment()),
                           encode_block(block));
        counts.row({std::string(circuit_kind_name(block.kind())), std::to_string(block.qubit()),
                    std::to_string(block.experiment()), std::to_string(block.ones()), std::to_string(block.shots())});
    }
    counts.close();
    detail::write_text(dir / "manifest.json", detail::manifest_json(archive, name).dump(2) + "\n");
}

struct LoadedRun {
    RunArchive archive;
    std::string name;
};

/// Reads a run directory back. Missing or truncated blocks and incomplete
/// manifests raise ErrorKind::incomplete listing what is absent.
inline LoadedRun load_run_directory(const std::filesystem::path &dir) {
    const auto manifest_path = dir / "manifest.json";
    if (!std::filesystem::exists(manifest_path)) {
        throw Error(ErrorKind::incomplete, "missing " + manifest_path.string());
    }
    const nlohmann::json manifest = detail::parse_json_file(manifest_path);
    LoadedRun run;
    try {
        if (manifest.at("schema").get<std::string>() != kManifestSchema) {
            throw Error(ErrorKind::input, manifest_path.string() + ": unexpected schema");
        }
        const DeviceConfig cfg = parse_device_config(manifest.at("device"), manifest_path.string());
        run.name = cfg.name;
        run.archive.plan = cfg.plan();
        run.archive.manifest.toolkit_version = manifest.at("toolkit_version").get<std::string>();
        run.archive.manifest.started_utc = manifest.at("started_utc").get<std::string>();
        run.archive.manifest.finished_utc = manifest.at("finished_utc").get<std::string>();
        run.archive.manifest.complete = manifest.at("complete").get<bool>();
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::input, manifest_path.string() + ": " + e.what());
    }
    if (!run.archive.manifest.complete) {
        throw Error(ErrorKind::incomplete, manifest_path.string() + " marks a partial run");
    }

    const ExperimentPlan &plan = run.archive.plan;
    run.archive.blocks.resize(plan.block_count());
    std::vector<std::string> problems;
    for (CircuitKind kind : kAllCircuitKinds) {
        for (std::size_t pos = 0; pos < plan.qubits.size(); ++pos) {
            const int qubit = plan.qubits[pos].index;
            for (int l = 0; l < plan.experiments; ++l) {
                const std::string file = block_file_name(kind, qubit, l);
                try {
                    ShotBlock block = decode_block(detail::read_file(dir / "blocks" / file), kind, qubit, l);
                    if (block.shots() != plan.shots) {
                        throw Error(ErrorKind::incomplete, "holds " + std::to_string(block.shots()) + " shots, plan says " +
                                                               std::to_string(plan.shots));
                    }
                    run.archive.blocks[plan.block_position(kind, pos, l)] = std::move(block);
                } catch (const Error &e) {
                    problems.push_back(file + " (" + e.what() + ")");
                }
            }
        }
    }
    if (!problems.empty()) {
        std::ostringstream os;
        os << problems.size() << " missing or damaged block(s):";
        const std::size_t shown = std::min<std::size_t>(problems.size(), 20);
        for (std::size_t i = 0; i < shown; ++i) {
            os << "\n  " << problems[i];
        }
        if (shown < problems.size()) {
            os << "\n  ... and " << problems.size() - shown << " more";
        }
        throw Error(ErrorKind::incomplete, os.str());
    }
    return run;
}

}  // namespace repro
