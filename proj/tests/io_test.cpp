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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "gtest/gtest.h"
#include "repro/archive_io.hpp"
#include "repro/config.hpp"
#include "repro/csv.hpp"
#include "repro/tables.hpp"

using namespace repro;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("repro_io_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ErrorKind kind_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::invalid_state;
}

nlohmann::json device_doc() {
    return nlohmann::json::parse(R"({
        "schema": "repro-bound/device/1",
        "name": "pair",
        "qubits": [
            {"index": 1, "f0": 0.98, "f1": 0.94, "theta_rad": -0.01},
            {"index": 0, "f0": 0.99, "f1": 0.95, "theta_rad": 0.0213}
        ],
        "plan": {"L": 3, "S": 16, "seed": 12}
    })");
}

}  // namespace

TEST(io, block_encoding_round_trip) {
    const std::vector<int> bits{1, 0, 0, 1, 1, 1, 0, 1, 1, 0, 1};
    const auto block = ShotBlock::from_bits(CircuitKind::spam1, 3, 7, bits);
    const auto bytes = encode_block(block);
    ASSERT_EQ(bytes.size(), 8u + 2u);
    EXPECT_EQ(bytes[0], 11);
    EXPECT_EQ(decode_block(bytes, CircuitKind::spam1, 3, 7), block);
}

TEST(io, truncated_block_is_incomplete) {
    const auto block = ShotBlock::from_bits(CircuitKind::c, 0, 0, std::vector<int>(20, 1));
    auto bytes = encode_block(block);
    bytes.pop_back();
    EXPECT_EQ(kind_of([&] { decode_block(bytes, CircuitKind::c, 0, 0); }), ErrorKind::incomplete);
    EXPECT_EQ(kind_of([&] { decode_block(std::vector<std::uint8_t>(3), CircuitKind::c, 0, 0); }),
              ErrorKind::incomplete);
}

TEST(io, device_config_parses_and_sorts) {
    const auto cfg = parse_device_config(device_doc());
    EXPECT_EQ(cfg.name, "pair");
    ASSERT_EQ(cfg.qubits.size(), 2u);
    EXPECT_EQ(cfg.qubits[0].index, 0);
    EXPECT_EQ(cfg.qubits[0].params.theta, 0.0213);
    EXPECT_EQ(cfg.experiments, 3);
    EXPECT_EQ(cfg.shots, 16u);
    EXPECT_EQ(cfg.seed, 12u);
    const auto again = parse_device_config(device_config_to_json(cfg));
    EXPECT_EQ(again.qubits[1].params.f1, 0.94);
}

TEST(io, device_config_diagnostics_name_the_field) {
    auto doc = device_doc();
    doc["qubits"][0]["f1"] = 1.2;
    try {
        parse_device_config(doc, "dev.json");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::input);
        EXPECT_NE(std::string(e.what()).find("qubits[0].f1"), std::string::npos) << e.what();
    }

    doc = device_doc();
    doc["qubits"][0]["index"] = 0;
    EXPECT_EQ(kind_of([&] { parse_device_config(doc); }), ErrorKind::input);

    doc = device_doc();
    doc["qubits"][0]["theta_rad"] = std::numbers::pi / 4;
    EXPECT_EQ(kind_of([&] { parse_device_config(doc); }), ErrorKind::input);

    doc = device_doc();
    doc["plan"]["L"] = 1;
    EXPECT_EQ(kind_of([&] { parse_device_config(doc); }), ErrorKind::input);

    doc = device_doc();
    doc["schema"] = "something/else";
    EXPECT_EQ(kind_of([&] { parse_device_config(doc); }), ErrorKind::input);
}

TEST(io, malformed_json_reports_line) {
    const auto dir = scratch("malformed");
    std::ofstream(dir / "bad.json") << "{\n  \"schema\": \"x\",\n  oops\n}\n";
    try {
        load_device_config(dir / "bad.json");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::input);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(io, calibration_snapshot_units) {
    const auto snap = parse_calibration_snapshot(nlohmann::json::parse(R"({
        "schema": "repro-bound/calibration/1",
        "source": "backend",
        "captured_at": "2021-04-08T00:00:00Z",
        "qubits": [
            {"index": 0, "f0": 0.97, "f1": 0.91, "gate_error": {"value": 1.2, "unit": "deg"}},
            {"index": 1, "f0": 0.93, "f1": 0.86, "gate_error": {"value": 0.02, "unit": "rad"}},
            {"index": 2, "f0": 0.95, "f1": 0.90, "gate_error": {"value": 0.25, "unit": "flip_probability"}},
            {"index": 3, "f0": 0.95, "f1": 0.90}
        ]
    })"));
    ASSERT_EQ(snap.qubits.size(), 4u);
    EXPECT_NEAR(*snap.qubits[0].theta, 1.2 * std::numbers::pi / 180, 1e-15);
    EXPECT_EQ(*snap.qubits[1].theta, 0.02);
    EXPECT_NEAR(*snap.qubits[2].theta, std::numbers::pi / 6, 1e-15);
    EXPECT_FALSE(snap.qubits[3].theta);
    const auto row = to_row(snap.qubits[3]);
    EXPECT_FALSE(row.has_theta());
    EXPECT_EQ(row.warnings, kThetaMissing);
}

TEST(io, calibration_rejects_bad_values) {
    auto doc = nlohmann::json::parse(R"({
        "schema": "repro-bound/calibration/1", "source": "s", "captured_at": "t",
        "qubits": [{"index": 0, "f0": 0.97, "f1": 1.01}]
    })");
    EXPECT_EQ(kind_of([&] { parse_calibration_snapshot(doc); }), ErrorKind::input);
    doc["qubits"][0]["f1"] = 0.9;
    doc["qubits"][0]["gate_error"] = {{"value", 1.0}, {"unit", "furlongs"}};
    EXPECT_EQ(kind_of([&] { parse_calibration_snapshot(doc); }), ErrorKind::input);
}

TEST(io, csv_numbers_round_trip) {
    for (double x : {0.1, 1.0 / 3, 0.0212830221673919972, -1e-300, 12345.678}) {
        EXPECT_EQ(parse_double(format_number(x), "x"), x);
    }
    EXPECT_TRUE(std::isnan(parse_double(format_number(std::nan("")), "x")));
    EXPECT_EQ(kind_of([] { parse_double("1.5x", "x"); }), ErrorKind::input);
}

TEST(io, characterization_csv_round_trip) {
    const auto dir = scratch("chr");
    CharacterizationRow r;
    r.qubit = 4;
    r.f0_mean = 0.99;
    r.f1_mean = 0.95;
    r.eps_mean = 0.04;
    r.eps_sigma = 1e-4;
    r.f_mean = 0.97;
    r.gamma_hat = 0.03;
    r.theta_hat_rad = -0.02;
    r.d_mean = 0.01;
    r.d_sigma = 2e-4;
    r.experiments = 203;
    r.shots = 8192;
    r.warnings = "a; b";
    write_characterization_csv(dir / "c.csv", {r});
    const auto back = read_characterization_csv(dir / "c.csv");
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].qubit, 4);
    EXPECT_EQ(back[0].theta_hat_rad, -0.02);
    EXPECT_EQ(back[0].d_sigma, 2e-4);
    EXPECT_EQ(back[0].shots, 8192);
    EXPECT_EQ(back[0].warnings, "a; b");
    EXPECT_EQ(kind_of([&] { read_characterization_csv(dir / "missing.csv", ErrorKind::incomplete); }),
              ErrorKind::incomplete);
}

TEST(io, run_directory_round_trip) {
    const auto dir = scratch("run");
    const auto cfg = parse_device_config(device_doc());
    const auto archive = run_plan(cfg.plan());
    write_run_directory(archive, dir, cfg.name);
    const auto loaded = load_run_directory(dir);
    EXPECT_EQ(loaded.name, "pair");
    EXPECT_EQ(loaded.archive.blocks, archive.blocks);
    EXPECT_TRUE(fs::exists(dir / "counts.csv"));
    const auto counts = read_csv(dir / "counts.csv");
    EXPECT_EQ(counts.rows.size(), archive.blocks.size());
}

TEST(io, damaged_run_directory_is_incomplete) {
    const auto dir = scratch("damaged");
    const auto cfg = parse_device_config(device_doc());
    write_run_directory(run_plan(cfg.plan()), dir, cfg.name);
    fs::remove(dir / "blocks" / block_file_name(CircuitKind::c, 1, 2));
    try {
        load_run_directory(dir);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::incomplete);
        EXPECT_NE(std::string(e.what()).find("c_1_2.bin"), std::string::npos) << e.what();
    }
    fs::remove(dir / "manifest.json");
    EXPECT_EQ(kind_of([&] { load_run_directory(dir); }), ErrorKind::incomplete);
}

TEST(io, partial_manifest_is_incomplete) {
    const auto dir = scratch("partial");
    const auto cfg = parse_device_config(device_doc());
    auto archive = run_plan(cfg.plan());
    archive.manifest.complete = false;
    write_run_directory(archive, dir, cfg.name);
    EXPECT_EQ(kind_of([&] { load_run_directory(dir); }), ErrorKind::incomplete);
}
