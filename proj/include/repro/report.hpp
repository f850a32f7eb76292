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
/// Plot-ready CSV bundle built from a characterized run.

#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <vector>

#include "repro/archive_io.hpp"
#include "repro/csv.hpp"
#include "repro/estimator.hpp"
#include "repro/tables.hpp"

namespace repro {

struct ReportInputs {
    std::vector<CharacterizationRow> characterization;
    std::vector<VerdictRow> verdicts;
    RunArchive archive;
};

inline void write_report(const ReportInputs &in, const std::filesystem::path &out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw Error(ErrorKind::io, "cannot create " + out_dir.string() + ": " + ec.message());
    }

    {
        CsvWriter t(out_dir / "table1.csv");
        t.row({"register", "gamma_max", "gamma_D"});
        for (const auto &v : in.verdicts) {
            t.row({std::to_string(v.qubit), format_number(v.verdict.gamma_max), format_number(v.verdict.gamma_D)});
        }
        t.close();
    }

    std::vector<const CharacterizationRow *> ok;
    for (const auto &r : in.characterization) {
        if (!r.failed()) {
            ok.push_back(&r);
        }
    }

    {
        CompensatedSum sum;
        for (const auto *r : ok) {
            sum.add(std::abs(r->theta_hat_rad) * 180.0 / std::numbers::pi);
        }
        const double register_mean = ok.empty() ? 0.0 : sum.value() / static_cast<double>(ok.size());
        CsvWriter t(out_dir / "fig_theta.csv");
        t.row({"qubit", "theta_abs_deg", "register_mean_deg"});
        for (const auto *r : ok) {
            t.row({std::to_string(r->qubit), format_number(std::abs(r->theta_hat_rad) * 180.0 / std::numbers::pi),
                   format_number(register_mean)});
        }
        t.close();
    }

    {
        CsvWriter h(out_dir / "fig_hellinger.csv");
        h.row({"qubit", "d_mean", "d_sigma"});
        CsvWriter a(out_dir / "fig_asymmetry.csv");
        a.row({"qubit", "eps_mean", "eps_sigma"});
        for (const auto *r : ok) {
            h.row({std::to_string(r->qubit), format_number(r->d_mean), format_number(r->d_sigma)});
            a.row({std::to_string(r->qubit), format_number(r->eps_mean), format_number(r->eps_sigma)});
        }
        h.close();
        a.close();
    }

    {
        std::map<int, const VerdictRow *> by_qubit;
        for (const auto &v : in.verdicts) {
            by_qubit[v.qubit] = &v;
        }
        CsvWriter g(out_dir / "fig_gamma.csv");
        g.row({"qubit", "gamma_hat", "gamma_D", "gamma_max", "delta"});
        for (const auto *r : ok) {
            const auto it = by_qubit.find(r->qubit);
            if (it == by_qubit.end()) {
                continue;
            }
            const auto &v = it->second->verdict;
            g.row({std::to_string(r->qubit), format_number(r->gamma_hat), format_number(v.gamma_D),
                   format_number(v.gamma_max), format_number(v.delta)});
        }
        g.close();
    }

    {
        CsvWriter s(out_dir / "fig_scatter.csv");
        s.row({"qubit", "experiment", "eps", "d"});
        for (std::size_t pos = 0; pos < in.archive.plan.qubits.size(); ++pos) {
            const ExperimentSeries series = experiment_series(in.archive, pos);
            const int qubit = in.archive.plan.qubits[pos].index;
            for (std::size_t l = 0; l < series.eps.size(); ++l) {
                s.row({std::to_string(qubit), std::to_string(l), format_number(series.eps[l]),
                       format_number(series.d[l])});
            }
        }
        s.close();
    }
}

}  // namespace repro
