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
/// Device characterization from shot data.
///
/// Every quantity is first estimated per experiment l (one block of S shots)
/// and then averaged over the L experiments; error bars are the standard
/// deviation of that population mean, sqrt(sum (x_l - mean)^2 / (L (L - 1))).
/// The Hadamard angle error is recovered by inverting
/// gamma = eps - 2 sin(2 theta) (f - 1/2).

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "repro/distance.hpp"
#include "repro/errors.hpp"
#include "repro/noise_model.hpp"
#include "repro/sampler.hpp"

namespace repro {

namespace detail {

inline void require_kind(const ShotBlock &block, CircuitKind expected) {
    if (block.kind() != expected) {
        throw Error(ErrorKind::misuse, "expected a " + std::string(circuit_kind_name(expected)) + " block, got " +
                                           std::string(circuit_kind_name(block.kind())));
    }
    if (block.shots() == 0) {
        throw Error(ErrorKind::empty_data, "block holds no shots");
    }
}

inline double ones_fraction(const ShotBlock &block) {
    return static_cast<double>(block.ones()) / static_cast<double>(block.shots());
}

}  // namespace detail

/// Fraction of ones in a spam1 block.
inline double estimate_f1(const ShotBlock &block) {
    detail::require_kind(block, CircuitKind::spam1);
    return detail::ones_fraction(block);
}

/// Fraction of zeros in a spam0 block.
inline double estimate_f0(const ShotBlock &block) {
    detail::require_kind(block, CircuitKind::spam0);
    return 1 - detail::ones_fraction(block);
}

/// (Pr(0), Pr(1)) observed in a circuit-c block.
inline BinaryDist estimate_pr(const ShotBlock &block) {
    detail::require_kind(block, CircuitKind::c);
    const double pr1 = detail::ones_fraction(block);
    return {1 - pr1, pr1};
}

/// Hellinger distance of a one-qubit distribution from (1/2, 1/2).
inline double hellinger_single(const BinaryDist &pr) {
    const double inner = 1 - std::sqrt(pr[0] / 2) - std::sqrt(pr[1] / 2);
    return std::sqrt(std::max(inner, 0.0));
}

struct PopulationStats {
    double mean = 0.0;
    double sigma_of_mean = 0.0;
};

/// Mean of per-experiment values and the standard deviation of that mean
/// (unbiased L - 1 denominator). Needs L >= 2.
inline PopulationStats population_stats(std::span<const double> values) {
    const std::size_t count = values.size();
    if (count < 2) {
        throw Error(ErrorKind::insufficient_data,
                    "need at least 2 experiments for an error bar, got " + std::to_string(count));
    }
    const double l = static_cast<double>(count);
    const double mean = compensated_sum(values) / l;
    CompensatedSum squares;
    for (double v : values) {
        squares.add((v - mean) * (v - mean));
    }
    return {mean, std::sqrt(squares.value() / (l * (l - 1)))};
}

/// Result of solving gamma = eps - 2 sin(2 theta) (f - 1/2) for theta.
struct ThetaInversion {
    double theta = 0.0;         // radians
    double argument = 0.0;      // arcsin argument before clamping
    bool clamped = false;       // argument left [-1, 1]
    std::string warning;        // set when clamping exceeded rounding level
};

/// Arcsin arguments beyond [-1, 1] by at most this much are rounding noise.
inline constexpr double kClampSilent = 1e-9;
/// Beyond this the noise model cannot explain the data.
inline constexpr double kClampFatal = 0.01;
/// |2 f - 1| below this leaves theta unidentifiable.
inline constexpr double kSingularFidelity = 1e-6;

inline ThetaInversion invert_theta(double gamma_hat, double eps_hat, double f_hat) {
    const double denom = 2 * f_hat - 1;
    if (!(std::abs(denom) >= kSingularFidelity)) {
        std::ostringstream os;
        os << "average readout fidelity " << f_hat << " is too close to 1/2 to identify theta";
        throw Error(ErrorKind::singular_fidelity, os.str());
    }
    ThetaInversion out;
    out.argument = (eps_hat - gamma_hat) / denom;
    double x = out.argument;
    const double overshoot = std::abs(x) - 1;
    if (overshoot > 0) {
        if (overshoot > kClampFatal) {
            std::ostringstream os;
            os << "arcsin argument " << x << " lies outside [-1,1]; the noise model does not explain the data";
            throw Error(ErrorKind::model_mismatch, os.str());
        }
        if (overshoot > kClampSilent) {
            std::ostringstream os;
            os << "arcsin argument " << x << " clamped into [-1,1]";
            out.warning = os.str();
        }
        out.clamped = true;
        x = std::copysign(1.0, x);
    }
    out.theta = std::asin(x) / 2;
    return out;
}

/// How gamma-hat is formed from the circuit-c blocks.
enum class GammaMode {
    per_experiment,  // mean of per-experiment Pr(0) - Pr(1)
    pooled,          // all L * S shots at once
};

struct CharacterizationEstimate {
    int qubit = 0;
    double f0_mean = 0, f0_sigma = 0;
    double f1_mean = 0, f1_sigma = 0;
    double eps_mean = 0, eps_sigma = 0;
    double f_mean = 0;
    double gamma_hat = 0, gamma_sigma = 0;
    double theta_hat = 0;  // radians, signed
    double theta_sigma = 0;
    double d_mean = 0, d_sigma = 0;
    int experiments = 0;  // L
    std::uint64_t shots = 0;  // S
    std::vector<std::string> warnings;

    double theta_hat_deg() const { return std::abs(theta_hat) * 180.0 / std::numbers::pi; }
};

/// Per-experiment estimates for one qubit, indexed by experiment.
struct ExperimentSeries {
    std::vector<double> f0, f1, eps, pr0, pr1, gamma, d;
};

inline ExperimentSeries experiment_series(const RunArchive &archive, std::size_t qubit_pos) {
    const int experiments = archive.plan.experiments;
    ExperimentSeries s;
    for (int l = 0; l < experiments; ++l) {
        const double f0 = estimate_f0(archive.block(CircuitKind::spam0, qubit_pos, l));
        const double f1 = estimate_f1(archive.block(CircuitKind::spam1, qubit_pos, l));
        const BinaryDist pr = estimate_pr(archive.block(CircuitKind::c, qubit_pos, l));
        s.f0.push_back(f0);
        s.f1.push_back(f1);
        s.eps.push_back(f0 - f1);
        s.pr0.push_back(pr[0]);
        s.pr1.push_back(pr[1]);
        s.gamma.push_back(pr[0] - pr[1]);
        s.d.push_back(hellinger_single(pr));
    }
    return s;
}

/// First-order error bar of theta-hat from independent f0, f1 and gamma error bars.
inline double theta_sigma_first_order(const ThetaInversion &inv, double f_hat, double f0_sigma, double f1_sigma,
                                      double gamma_sigma) {
    const double x = inv.argument;
    if (std::abs(x) >= 1) {
        return std::numeric_limits<double>::infinity();
    }
    const double denom = 2 * f_hat - 1;
    const double dx_df0 = (1 - x) / denom;
    const double dx_df1 = -(1 + x) / denom;
    const double dx_dgamma = -1 / denom;
    const double var_x = dx_df0 * dx_df0 * f0_sigma * f0_sigma + dx_df1 * dx_df1 * f1_sigma * f1_sigma +
                         dx_dgamma * dx_dgamma * gamma_sigma * gamma_sigma;
    return std::sqrt(var_x) / (2 * std::sqrt(1 - x * x));
}

inline CharacterizationEstimate estimate_from_series(const ExperimentSeries &s, int qubit, std::uint64_t shots,
                                                     GammaMode mode = GammaMode::per_experiment) {
    CharacterizationEstimate e;
    e.qubit = qubit;
    e.experiments = static_cast<int>(s.f0.size());
    e.shots = shots;
    const auto f0 = population_stats(s.f0);
    const auto f1 = population_stats(s.f1);
    const auto eps = population_stats(s.eps);
    const auto d = population_stats(s.d);
    e.f0_mean = f0.mean;
    e.f0_sigma = f0.sigma_of_mean;
    e.f1_mean = f1.mean;
    e.f1_sigma = f1.sigma_of_mean;
    e.eps_mean = eps.mean;
    e.eps_sigma = eps.sigma_of_mean;
    e.f_mean = (f0.mean + f1.mean) / 2;
    e.d_mean = d.mean;
    e.d_sigma = d.sigma_of_mean;
    if (mode == GammaMode::per_experiment) {
        const auto g = population_stats(s.gamma);
        e.gamma_hat = g.mean;
        e.gamma_sigma = g.sigma_of_mean;
    } else {
        const double pr0 = compensated_sum(s.pr0) / static_cast<double>(s.pr0.size());
        const double total = static_cast<double>(shots) * static_cast<double>(s.pr0.size());
        e.gamma_hat = 2 * pr0 - 1;
        e.gamma_sigma = 2 * std::sqrt(pr0 * (1 - pr0) / total);
    }
    const ThetaInversion inv = invert_theta(e.gamma_hat, e.eps_mean, e.f_mean);
    e.theta_hat = inv.theta;
    e.theta_sigma = theta_sigma_first_order(inv, e.f_mean, e.f0_sigma, e.f1_sigma, e.gamma_sigma);
    if (!inv.warning.empty()) {
        e.warnings.push_back(inv.warning);
    }
    return e;
}

/// Outcome for one qubit: an estimate, or the reason there is none.
struct QubitCharacterization {
    int qubit = 0;
    std::optional<CharacterizationEstimate> estimate;
    std::string error;
};

/// Characterizes every qubit of the archive. A failure on one qubit is
/// recorded in its entry and does not stop the others.
inline std::vector<QubitCharacterization> characterize(const RunArchive &archive,
                                                       GammaMode mode = GammaMode::per_experiment) {
    std::vector<QubitCharacterization> out;
    for (std::size_t pos = 0; pos < archive.plan.qubits.size(); ++pos) {
        QubitCharacterization entry;
        entry.qubit = archive.plan.qubits[pos].index;
        try {
            entry.estimate =
                estimate_from_series(experiment_series(archive, pos), entry.qubit, archive.plan.shots, mode);
        } catch (const Error &e) {
            entry.error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace repro
