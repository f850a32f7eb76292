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
/// Tabular outputs: characterization.csv, verdicts.csv and lemma_report.json.

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"
#include "repro/bounds.hpp"
#include "repro/config.hpp"
#include "repro/csv.hpp"
#include "repro/estimator.hpp"

namespace repro {

inline const std::vector<std::string> kCharacterizationColumns{
    "qubit",   "f0_mean",       "f1_mean",       "eps_mean", "eps_sigma", "f_mean", "gamma_hat",
    "theta_hat_rad", "theta_hat_deg", "d_mean", "d_sigma",   "L",      "S",         "warnings"};

inline const std::vector<std::string> kVerdictColumns{"qubit",     "n",      "delta",       "gamma_D",
                                                      "gamma_max", "margin", "reproducible"};

/// Warning tag on rows whose theta is unknown (imported calibrations).
inline constexpr const char *kThetaMissing = "theta-missing";
inline constexpr const char *kErrorPrefix = "error: ";

/// One row of characterization.csv. Unknown values are NaN.
struct CharacterizationRow {
    int qubit = 0;
    double f0_mean = 0, f1_mean = 0, eps_mean = 0, eps_sigma = 0, f_mean = 0;
    double gamma_hat = 0, theta_hat_rad = 0;
    double d_mean = 0, d_sigma = 0;
    long long experiments = 0, shots = 0;
    std::string warnings;

    bool failed() const { return warnings.rfind(kErrorPrefix, 0) == 0; }
    bool has_theta() const { return std::isfinite(theta_hat_rad); }
    bool has_distance() const { return std::isfinite(d_mean); }
};

inline CharacterizationRow to_row(const QubitCharacterization &qc) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    CharacterizationRow r;
    r.qubit = qc.qubit;
    if (!qc.estimate) {
        r.f0_mean = r.f1_mean = r.eps_mean = r.eps_sigma = r.f_mean = r.gamma_hat = r.theta_hat_rad = r.d_mean =
            r.d_sigma = nan;
        r.warnings = kErrorPrefix + qc.error;
        return r;
    }
    const auto &e = *qc.estimate;
    r.f0_mean = e.f0_mean;
    r.f1_mean = e.f1_mean;
    r.eps_mean = e.eps_mean;
    r.eps_sigma = e.eps_sigma;
    r.f_mean = e.f_mean;
    r.gamma_hat = e.gamma_hat;
    r.theta_hat_rad = e.theta_hat;
    r.d_mean = e.d_mean;
    r.d_sigma = e.d_sigma;
    r.experiments = e.experiments;
    r.shots = static_cast<long long>(e.shots);
    for (const auto &w : e.warnings) {
        r.warnings += (r.warnings.empty() ? "" : "; ") + w;
    }
    return r;
}

inline CharacterizationRow to_row(const CalibrationQubit &q) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    CharacterizationRow r;
    r.qubit = q.index;
    r.f0_mean = q.f0;
    r.f1_mean = q.f1;
    r.eps_mean = q.f0 - q.f1;
    r.eps_sigma = 0;
    r.f_mean = (q.f0 + q.f1) / 2;
    r.theta_hat_rad = q.theta.value_or(nan);
    r.gamma_hat = q.theta ? r.eps_mean - 2 * std::sin(2 * *q.theta) * (r.f_mean - 0.5) : nan;
    r.d_mean = r.d_sigma = nan;
    r.warnings = q.theta ? "" : kThetaMissing;
    return r;
}

inline void write_characterization_csv(const std::filesystem::path &path, const std::vector<CharacterizationRow> &rows) {
    CsvWriter out(path);
    out.row(kCharacterizationColumns);
    for (const auto &r : rows) {
        const double deg = std::abs(r.theta_hat_rad) * 180.0 / std::numbers::pi;
        out.row({std::to_string(r.qubit), format_number(r.f0_mean), format_number(r.f1_mean),
                 format_number(r.eps_mean), format_number(r.eps_sigma), format_number(r.f_mean),
                 format_number(r.gamma_hat), format_number(r.theta_hat_rad), format_number(deg),
                 format_number(r.d_mean), format_number(r.d_sigma), std::to_string(r.experiments),
                 std::to_string(r.shots), sanitize_field(r.warnings)});
    }
    out.close();
}

inline std::vector<CharacterizationRow> read_characterization_csv(const std::filesystem::path &path,
                                                                  ErrorKind missing_kind = ErrorKind::input) {
    const CsvTable t = read_csv(path, missing_kind);
    std::vector<std::size_t> col;
    for (const auto &name : kCharacterizationColumns) {
        col.push_back(t.column(name));
    }
    std::vector<CharacterizationRow> rows;
    for (const auto &f : t.rows) {
        CharacterizationRow r;
        r.qubit = static_cast<int>(parse_integer(f[col[0]], "qubit"));
        r.f0_mean = parse_double(f[col[1]], "f0_mean");
        r.f1_mean = parse_double(f[col[2]], "f1_mean");
        r.eps_mean = parse_double(f[col[3]], "eps_mean");
        r.eps_sigma = parse_double(f[col[4]], "eps_sigma");
        r.f_mean = parse_double(f[col[5]], "f_mean");
        r.gamma_hat = parse_double(f[col[6]], "gamma_hat");
        r.theta_hat_rad = parse_double(f[col[7]], "theta_hat_rad");
        r.d_mean = parse_double(f[col[9]], "d_mean");
        r.d_sigma = parse_double(f[col[10]], "d_sigma");
        r.experiments = parse_integer(f[col[11]], "L");
        r.shots = parse_integer(f[col[12]], "S");
        r.warnings = f[col[13]];
        rows.push_back(std::move(r));
    }
    return rows;
}

struct VerdictRow {
    int qubit = 0;
    ReproVerdict verdict;
};

inline void write_verdicts_csv(const std::filesystem::path &path, const std::vector<VerdictRow> &rows) {
    CsvWriter out(path);
    out.row(kVerdictColumns);
    for (const auto &r : rows) {
        const auto &v = r.verdict;
        out.row({std::to_string(r.qubit), std::to_string(v.n), format_number(v.delta), format_number(v.gamma_D),
                 format_number(v.gamma_max), format_number(v.margin), v.reproducible ? "true" : "false"});
    }
    out.close();
}

inline std::vector<VerdictRow> read_verdicts_csv(const std::filesystem::path &path,
                                                 ErrorKind missing_kind = ErrorKind::input) {
    const CsvTable t = read_csv(path, missing_kind);
    std::vector<std::size_t> col;
    for (const auto &name : kVerdictColumns) {
        col.push_back(t.column(name));
    }
    std::vector<VerdictRow> rows;
    for (const auto &f : t.rows) {
        VerdictRow r;
        r.qubit = static_cast<int>(parse_integer(f[col[0]], "qubit"));
        r.verdict.n = static_cast<int>(parse_integer(f[col[1]], "n"));
        r.verdict.delta = parse_double(f[col[2]], "delta");
        r.verdict.gamma_D = parse_double(f[col[3]], "gamma_D");
        r.verdict.gamma_max = parse_double(f[col[4]], "gamma_max");
        r.verdict.margin = parse_double(f[col[5]], "margin");
        const std::string &flag = f[col[6]];
        if (flag != "true" && flag != "false") {
            throw Error(ErrorKind::input, path.string() + ": reproducible must be true or false");
        }
        r.verdict.reproducible = flag == "true";
        rows.push_back(r);
    }
    return rows;
}

inline nlohmann::json lemma_report_json(const LemmaReport &report) {
    nlohmann::json ce = nlohmann::json::array();
    for (const auto &c : report.counterexamples) {
        ce.push_back({{"delta", c.delta},
                      {"gamma", c.gamma},
                      {"gamma_max", c.gamma_max},
                      {"distance", c.distance},
                      {"bound_holds", c.bound_holds},
                      {"distance_holds", c.distance_holds}});
    }
    return {{"pairs_checked", report.pairs_checked},
            {"tie_tolerance", report.tie_tolerance},
            {"equivalent", report.equivalent()},
            {"counterexamples", ce}};
}

}  // namespace repro
