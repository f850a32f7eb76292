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
/// JSON documents read by the CLI: device configurations for synthetic runs
/// and vendor calibration snapshots. Every violation is reported as an input
/// error naming the offending field (and line/column for syntax errors).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "repro/errors.hpp"
#include "repro/noise_model.hpp"
#include "repro/sampler.hpp"

namespace repro {

inline constexpr const char *kDeviceSchema = "repro-bound/device/1";
inline constexpr const char *kCalibrationSchema = "repro-bound/calibration/1";

struct DeviceConfig {
    std::string name;
    std::vector<QubitSpec> qubits;  // sorted by index, contiguous from 0
    int experiments = 2;            // L
    std::uint64_t shots = 1;        // S
    std::uint64_t seed = 0;

    ExperimentPlan plan() const {
        ExperimentPlan p;
        p.experiments = experiments;
        p.shots = shots;
        p.qubits = qubits;
        p.seed = seed;
        return p;
    }
};

namespace detail {

[[noreturn]] inline void input_error(const std::string &source, const std::string &message) {
    throw Error(ErrorKind::input, source + ": " + message);
}

inline nlohmann::json parse_json_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::input, "cannot read " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        // Translate the byte offset into line:column.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        input_error(path.string(), "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                       ": malformed JSON (" + e.what() + ")");
    }
}

/// Typed field access with a JSON-pointer-like field path in diagnostics.
class FieldReader {
   public:
    FieldReader(const nlohmann::json &node, std::string source, std::string path)
        : node_(node), source_(std::move(source)), path_(std::move(path)) {
        if (!node_.is_object()) {
            fail(path_.empty() ? "document" : path_, "must be a JSON object");
        }
    }

    bool has(const char *key) const { return node_.contains(key) && !node_.at(key).is_null(); }

    const nlohmann::json &required(const char *key) const {
        if (!has(key)) {
            fail(field(key), "is required");
        }
        return node_.at(key);
    }

    std::string string(const char *key) const {
        const auto &v = required(key);
        if (!v.is_string()) {
            fail(field(key), "must be a string");
        }
        return v.get<std::string>();
    }

    double number(const char *key) const {
        const auto &v = required(key);
        if (!v.is_number()) {
            fail(field(key), "must be a number");
        }
        const double x = v.get<double>();
        if (!std::isfinite(x)) {
            fail(field(key), "must be finite");
        }
        return x;
    }

    double probability(const char *key) const {
        const double x = number(key);
        if (x < 0.0 || x > 1.0) {
            std::ostringstream os;
            os << "must lie in [0,1], got " << x;
            fail(field(key), os.str());
        }
        return x;
    }

    long long integer(const char *key, long long min_value) const {
        const auto &v = required(key);
        if (!v.is_number_integer()) {
            fail(field(key), "must be an integer");
        }
        const long long x = v.is_number_unsigned() ? static_cast<long long>(v.get<std::uint64_t>()) : v.get<long long>();
        if (x < min_value) {
            fail(field(key), "must be at least " + std::to_string(min_value));
        }
        return x;
    }

    std::uint64_t unsigned_integer(const char *key) const {
        const auto &v = required(key);
        if (!v.is_number_unsigned()) {
            fail(field(key), "must be a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    const nlohmann::json &array(const char *key) const {
        const auto &v = required(key);
        if (!v.is_array()) {
            fail(field(key), "must be an array");
        }
        return v;
    }

    FieldReader child(const char *key) const { return FieldReader(required(key), source_, field(key)); }

    FieldReader element(const nlohmann::json &node, std::size_t i, const char *key) const {
        return FieldReader(node, source_, field(key) + "[" + std::to_string(i) + "]");
    }

    std::string field(const char *key) const { return path_.empty() ? key : path_ + "." + key; }

    [[noreturn]] void fail(const std::string &field_path, const std::string &message) const {
        input_error(source_, "field '" + field_path + "' " + message);
    }

   private:
    const nlohmann::json &node_;
    std::string source_;
    std::string path_;
};

inline void require_schema(const FieldReader &doc, const char *expected) {
    const std::string schema = doc.string("schema");
    if (schema != expected) {
        doc.fail("schema", "must be \"" + std::string(expected) + "\", got \"" + schema + "\"");
    }
}

/// Checks indices are unique and cover 0..count-1, then sorts by index.
template <typename Item, typename IndexOf>
void require_contiguous_indices(std::vector<Item> &items, IndexOf index_of, const FieldReader &doc) {
    std::vector<int> seen(items.size(), 0);
    for (const auto &item : items) {
        const int idx = index_of(item);
        if (idx < 0 || static_cast<std::size_t>(idx) >= items.size()) {
            doc.fail("qubits", "indices must be contiguous from 0; index " + std::to_string(idx) + " is out of range");
        }
        if (seen[static_cast<std::size_t>(idx)]++) {
            doc.fail("qubits", "duplicate qubit index " + std::to_string(idx));
        }
    }
    std::sort(items.begin(), items.end(),
              [&](const Item &a, const Item &b) { return index_of(a) < index_of(b); });
}

}  // namespace detail

/// Parses and validates a device configuration document.
inline DeviceConfig parse_device_config(const nlohmann::json &json, const std::string &source = "config") {
    const detail::FieldReader doc(json, source, "");
    detail::require_schema(doc, kDeviceSchema);
    DeviceConfig cfg;
    cfg.name = doc.string("name");
    const auto &qubits = doc.array("qubits");
    if (qubits.empty()) {
        doc.fail("qubits", "must list at least one qubit");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const auto q = doc.element(qubits[i], i, "qubits");
        QubitSpec spec;
        spec.index = static_cast<int>(q.integer("index", 0));
        spec.params.f0 = q.probability("f0");
        spec.params.f1 = q.probability("f1");
        spec.params.theta = q.number("theta_rad");
        if (!(std::abs(spec.params.theta) < kDefaultThetaLimit)) {
            q.fail(q.field("theta_rad"), "must satisfy |theta| < pi/4");
        }
        cfg.qubits.push_back(spec);
    }
    detail::require_contiguous_indices(cfg.qubits, [](const QubitSpec &s) { return s.index; }, doc);
    const auto plan = doc.child("plan");
    cfg.experiments = static_cast<int>(plan.integer("L", 2));
    if (cfg.experiments > 1'000'000) {
        plan.fail(plan.field("L"), "is unreasonably large");
    }
    cfg.shots = static_cast<std::uint64_t>(plan.integer("S", 1));
    cfg.seed = plan.unsigned_integer("seed");
    return cfg;
}

inline DeviceConfig load_device_config(const std::filesystem::path &path) {
    return parse_device_config(detail::parse_json_file(path), path.string());
}

inline nlohmann::json device_config_to_json(const DeviceConfig &cfg) {
    nlohmann::json qubits = nlohmann::json::array();
    for (const auto &q : cfg.qubits) {
        qubits.push_back({{"index", q.index}, {"f0", q.params.f0}, {"f1", q.params.f1}, {"theta_rad", q.params.theta}});
    }
    return {{"schema", kDeviceSchema},
            {"name", cfg.name},
            {"qubits", qubits},
            {"plan", {{"L", cfg.experiments}, {"S", cfg.shots}, {"seed", cfg.seed}}}};
}

/// Unit of a gate-error entry in a calibration snapshot.
enum class GateErrorUnit {
    radians,
    degrees,
    flip_probability,  // p = sin^2(theta) of a coherent over-rotation
};

struct CalibrationQubit {
    int index = 0;
    double f0 = 1;
    double f1 = 1;
    std::optional<double> theta;  // radians, after unit conversion
};

struct CalibrationSnapshot {
    std::string source;
    std::string captured_at;  // UTC, ISO-8601
    std::vector<CalibrationQubit> qubits;
};

inline double gate_error_to_theta(double value, GateErrorUnit unit) {
    switch (unit) {
        case GateErrorUnit::radians: return value;
        case GateErrorUnit::degrees: return value * std::numbers::pi / 180.0;
        case GateErrorUnit::flip_probability: return std::asin(std::sqrt(value));
    }
    return value;
}

inline CalibrationSnapshot parse_calibration_snapshot(const nlohmann::json &json,
                                                      const std::string &source = "snapshot") {
    const detail::FieldReader doc(json, source, "");
    detail::require_schema(doc, kCalibrationSchema);
    CalibrationSnapshot snap;
    snap.source = doc.string("source");
    snap.captured_at = doc.string("captured_at");
    const auto &qubits = doc.array("qubits");
    if (qubits.empty()) {
        doc.fail("qubits", "must list at least one qubit");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const auto q = doc.element(qubits[i], i, "qubits");
        CalibrationQubit cq;
        cq.index = static_cast<int>(q.integer("index", 0));
        cq.f0 = q.probability("f0");
        cq.f1 = q.probability("f1");
        if (q.has("gate_error")) {
            const auto ge = q.child("gate_error");
            const double value = ge.number("value");
            const std::string unit = ge.string("unit");
            GateErrorUnit u;
            if (unit == "rad") {
                u = GateErrorUnit::radians;
            } else if (unit == "deg") {
                u = GateErrorUnit::degrees;
            } else if (unit == "flip_probability") {
                u = GateErrorUnit::flip_probability;
                if (value < 0.0 || value > 1.0) {
                    ge.fail(ge.field("value"), "must lie in [0,1] for unit flip_probability");
                }
            } else {
                ge.fail(ge.field("unit"), "must be one of \"rad\", \"deg\", \"flip_probability\"; got \"" + unit + "\"");
            }
            cq.theta = gate_error_to_theta(value, u);
            if (!(std::abs(*cq.theta) < kDefaultThetaLimit)) {
                ge.fail(ge.field("value"), "converts to an angle outside |theta| < pi/4");
            }
        }
        snap.qubits.push_back(cq);
    }
    detail::require_contiguous_indices(snap.qubits, [](const CalibrationQubit &c) { return c.index; }, doc);
    return snap;
}

inline CalibrationSnapshot load_calibration_snapshot(const std::filesystem::path &path) {
    return parse_calibration_snapshot(detail::parse_json_file(path), path.string());
}

}  // namespace repro
