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
/// The `repro-bound` command line. Each subcommand is also callable as a
/// function returning the process exit code:
///
///   0 success, 2 input error, 3 I/O error, 4 incomplete artifacts,
///   5 tolerance outside the validity regime.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "repro/archive_io.hpp"
#include "repro/bounds.hpp"
#include "repro/config.hpp"
#include "repro/estimator.hpp"
#include "repro/log.hpp"
#include "repro/report.hpp"
#include "repro/sampler.hpp"
#include "repro/tables.hpp"

namespace repro::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 2,
    kExitIo = 3,
    kExitIncomplete = 4,
    kExitOutOfRegime = 5,
};

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::io: return kExitIo;
        case ErrorKind::incomplete: return kExitIncomplete;
        case ErrorKind::out_of_regime: return kExitOutOfRegime;
        default: return kExitInput;
    }
}

/// Runs `body`, turning toolkit errors into exit codes and diagnostics on `err`.
template <typename Body>
int guarded(std::ostream &err, Body &&body) {
    try {
        return body();
    } catch (const Error &e) {
        err << "repro-bound: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::filesystem::filesystem_error &e) {
        err << "repro-bound: io: " << e.what() << '\n';
        return kExitIo;
    }
}

struct SimulateOptions {
    std::filesystem::path config;
    std::filesystem::path out = "run";
    std::optional<std::uint64_t> seed;
    double drift_rad_per_experiment = 0.0;  // 0: drift hook off
    unsigned threads = default_thread_count();
};

inline int cmd_simulate(const SimulateOptions &opt, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        DeviceConfig cfg = load_device_config(opt.config);
        if (opt.seed) {
            cfg.seed = *opt.seed;
        }
        ExperimentPlan plan = cfg.plan();
        if (opt.drift_rad_per_experiment != 0.0) {
            const double rate = opt.drift_rad_per_experiment;
            plan.drift = [rate](const QubitNoiseParams &p, int, int experiment) {
                QubitNoiseParams drifted = p;
                drifted.theta += rate * experiment;
                return drifted;
            };
        }
        const auto start = std::chrono::steady_clock::now();
        const RunArchive archive = run_plan(plan, opt.threads);
        write_run_directory(archive, opt.out, cfg.name);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (log_level() != LogLevel::quiet) {
            out << "wrote " << archive.blocks.size() << " blocks for " << plan.qubits.size() << " qubit(s) to "
                << opt.out.string() << " in " << seconds << " s\n";
        }
        return kExitOk;
    });
}

struct CharacterizeOptions {
    std::filesystem::path run_dir;
    std::optional<std::filesystem::path> out;  // directory; defaults to run_dir
    GammaMode mode = GammaMode::per_experiment;
};

inline int cmd_characterize(const CharacterizeOptions &opt, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const LoadedRun run = load_run_directory(opt.run_dir);
        const auto results = characterize(run.archive, opt.mode);
        std::vector<CharacterizationRow> rows;
        for (const auto &r : results) {
            if (!r.error.empty()) {
                log_warning("qubit " + std::to_string(r.qubit) + ": " + r.error);
            } else {
                for (const auto &w : r.estimate->warnings) {
                    log_warning("qubit " + std::to_string(r.qubit) + ": " + w);
                }
            }
            rows.push_back(to_row(r));
        }
        const auto dir = opt.out.value_or(opt.run_dir);
        std::filesystem::create_directories(dir);
        const auto path = dir / "characterization.csv";
        write_characterization_csv(path, rows);
        if (log_level() != LogLevel::quiet) {
            out << "wrote " << path.string() << " (" << rows.size() << " qubit(s))\n";
        }
        return kExitOk;
    });
}

struct VerdictOptions {
    std::filesystem::path characterization;
    std::optional<double> delta;
    bool delta_from_observed = false;
    int n = 1;
    std::optional<double> theta_override;  // radians, for rows without theta
    std::optional<std::filesystem::path> out;  // directory; defaults to the input's directory
};

inline int cmd_verdict(const VerdictOptions &opt, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        if (opt.delta.has_value() == opt.delta_from_observed) {
            throw Error(ErrorKind::input, "give exactly one of --delta or --delta-from-observed");
        }
        if (opt.n < 1) {
            throw Error(ErrorKind::input, "--n must be positive");
        }
        if (opt.delta) {
            gamma_max(opt.n, *opt.delta);  // regime check before touching rows
        }
        const auto rows = read_characterization_csv(opt.characterization);
        std::vector<VerdictRow> verdicts;
        for (const auto &r : rows) {
            if (r.failed()) {
                log_warning("qubit " + std::to_string(r.qubit) + " skipped: " + r.warnings);
                continue;
            }
            double theta = r.theta_hat_rad;
            if (!r.has_theta()) {
                if (!opt.theta_override) {
                    throw Error(ErrorKind::input, "qubit " + std::to_string(r.qubit) +
                                                      " has no gate-angle estimate; pass --theta to supply one");
                }
                theta = *opt.theta_override;
            }
            double delta = 0;
            if (opt.delta_from_observed) {
                if (!r.has_distance()) {
                    throw Error(ErrorKind::input, "qubit " + std::to_string(r.qubit) +
                                                      " has no observed Hellinger distance for --delta-from-observed");
                }
                delta = r.d_mean;
            } else {
                delta = *opt.delta;
            }
            verdicts.push_back({r.qubit, verdict(opt.n, delta, r.eps_mean, theta, r.f_mean)});
        }
        const auto dir = opt.out.value_or(opt.characterization.parent_path().empty()
                                              ? std::filesystem::path(".")
                                              : opt.characterization.parent_path());
        std::filesystem::create_directories(dir);
        const auto path = dir / "verdicts.csv";
        write_verdicts_csv(path, verdicts);
        if (log_level() != LogLevel::quiet) {
            std::size_t ok = 0;
            for (const auto &v : verdicts) {
                ok += v.verdict.reproducible ? 1 : 0;
            }
            out << ok << "/" << verdicts.size() << " qubit(s) reproducible; wrote " << path.string() << "\n";
        }
        return kExitOk;
    });
}

struct ImportCalibrationOptions {
    std::filesystem::path snapshot;
    std::optional<std::filesystem::path> out;  // directory; defaults to the snapshot's directory
};

inline int cmd_import_calibration(const ImportCalibrationOptions &opt, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const CalibrationSnapshot snap = load_calibration_snapshot(opt.snapshot);
        std::vector<CharacterizationRow> rows;
        std::size_t missing_theta = 0;
        for (const auto &q : snap.qubits) {
            rows.push_back(to_row(q));
            missing_theta += q.theta ? 0 : 1;
        }
        const auto dir = opt.out.value_or(opt.snapshot.parent_path().empty() ? std::filesystem::path(".")
                                                                             : opt.snapshot.parent_path());
        std::filesystem::create_directories(dir);
        const auto path = dir / "calibration.csv";
        write_characterization_csv(path, rows);
        if (missing_theta) {
            log_warning(std::to_string(missing_theta) + " qubit(s) lack a gate error; verdict will need --theta");
        }
        if (log_level() != LogLevel::quiet) {
            out << "imported " << rows.size() << " qubit(s) from " << snap.source << " (" << snap.captured_at
                << "); wrote " << path.string() << "\n";
        }
        return kExitOk;
    });
}

struct PlanSamplesOptions {
    double p = 0.5;
    double precision = 0.01;
    double confidence = 0.95;
};

inline int cmd_plan_samples(const PlanSamplesOptions &opt, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        if (!(opt.confidence > 0.0 && opt.confidence < 1.0)) {
            throw Error(ErrorKind::input, "--confidence must lie strictly between 0 and 1");
        }
        const SamplePlan plan = plan_samples(opt.p, opt.precision, 1.0 - opt.confidence);
        out << "T=" << plan.shots << " z=" << format_number(plan.z) << "\n";
        return kExitOk;
    });
}

struct ReportOptions {
    std::filesystem::path run_dir;
    std::optional<std::filesystem::path> out;  // directory; defaults to run_dir
};

inline int cmd_report(const ReportOptions &opt, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        ReportInputs in;
        in.characterization = read_characterization_csv(opt.run_dir / "characterization.csv", ErrorKind::incomplete);
        in.verdicts = read_verdicts_csv(opt.run_dir / "verdicts.csv", ErrorKind::incomplete);
        in.archive = load_run_directory(opt.run_dir).archive;
        const auto dir = opt.out.value_or(opt.run_dir);
        write_report(in, dir);

        std::vector<double> deltas, gammas;
        for (int i = 1; i <= 100; ++i) {
            deltas.push_back(delta_ceiling(1) * i / 100.0);
            gammas.push_back((i - 1) / 99.0);
        }
        detail::write_text(dir / "lemma_report.json", lemma_report_json(lemma_a1_check(deltas, gammas)).dump(2) + "\n");
        if (log_level() != LogLevel::quiet) {
            out << "wrote report bundle to " << dir.string() << "\n";
        }
        return kExitOk;
    });
}

/// Parses argv and dispatches to a subcommand.
inline int run_cli(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr) {
    CLI::App app{"repro-bound: decide whether a noisy circuit's output is reproducible within a Hellinger tolerance"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
    bool quiet = false;
    app.add_option("--seed", seed, "Override the master seed of the device configuration");
    app.add_option("--out", out_dir, "Output directory");
    app.add_flag("--quiet", quiet, "Suppress progress output and warnings");

    SimulateOptions sim;
    auto *simulate = app.add_subcommand("simulate", "Run the SPAM(0)/SPAM(1)/circuit protocol on a synthetic device");
    simulate->add_option("config", sim.config, "Device configuration (JSON)")->required();
    simulate->add_option("--drift", sim.drift_rad_per_experiment,
                         "Exploratory: add this many radians of gate-angle error per experiment");

    CharacterizeOptions chr;
    bool pooled = false;
    auto *characterize_cmd = app.add_subcommand("characterize", "Estimate device parameters from a run directory");
    characterize_cmd->add_option("run-dir", chr.run_dir, "Run directory written by simulate")->required();
    characterize_cmd->add_flag("--pooled", pooled, "Estimate gamma from all shots pooled instead of per experiment");

    VerdictOptions ver;
    auto *verdict_cmd = app.add_subcommand("verdict", "Decide reproducibility for every characterized qubit");
    verdict_cmd->add_option("characterization", ver.characterization, "characterization.csv or calibration.csv")
        ->required();
    auto *delta_opt = verdict_cmd->add_option("--delta", ver.delta, "Hellinger tolerance");
    auto *observed_opt = verdict_cmd->add_flag("--delta-from-observed", ver.delta_from_observed,
                                               "Use each qubit's observed mean Hellinger distance as its tolerance");
    delta_opt->excludes(observed_opt);
    verdict_cmd->add_option("--n", ver.n, "Number of register elements in the circuit")->default_val(1);
    verdict_cmd->add_option("--theta", ver.theta_override, "Gate-angle error (rad) for rows that lack one");

    ImportCalibrationOptions imp;
    auto *import_cmd = app.add_subcommand("import-calibration", "Normalize a vendor calibration snapshot");
    import_cmd->add_option("snapshot", imp.snapshot, "Calibration snapshot (JSON)")->required();

    PlanSamplesOptions pls;
    auto *plan_cmd = app.add_subcommand("plan-samples", "Shots needed to estimate one outcome probability");
    plan_cmd->add_option("--p", pls.p, "Target outcome probability")->required();
    plan_cmd->add_option("--precision", pls.precision, "Relative precision")->required();
    plan_cmd->add_option("--confidence", pls.confidence, "Confidence level 1 - alpha")->default_val(0.95);

    ReportOptions rep;
    auto *report_cmd = app.add_subcommand("report", "Emit table and figure CSVs for a characterized run");
    report_cmd->add_option("run-dir", rep.run_dir, "Run directory with characterization.csv and verdicts.csv")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "repro-bound: " << e.what() << '\n';
        return kExitInput;
    }

    const LogLevel previous = log_level();
    if (quiet) {
        log_level() = LogLevel::quiet;
    }
    int code = kExitOk;
    if (simulate->parsed()) {
        sim.seed = seed;
        if (out_dir) {
            sim.out = *out_dir;
        }
        code = cmd_simulate(sim, out, err);
    } else if (characterize_cmd->parsed()) {
        chr.out = out_dir;
        chr.mode = pooled ? GammaMode::pooled : GammaMode::per_experiment;
        code = cmd_characterize(chr, out, err);
    } else if (verdict_cmd->parsed()) {
        ver.out = out_dir;
        code = cmd_verdict(ver, out, err);
    } else if (import_cmd->parsed()) {
        imp.out = out_dir;
        code = cmd_import_calibration(imp, out, err);
    } else if (plan_cmd->parsed()) {
        code = cmd_plan_samples(pls, out, err);
    } else if (report_cmd->parsed()) {
        rep.out = out_dir;
        code = cmd_report(rep, out, err);
    }
    log_level() = previous;
    return code;
}

}  // namespace repro::cli
