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
/// Reproducibility decision for the H-on-every-qubit circuit.
///
/// For n register elements sharing the composite parameter gamma, the output
/// is within Hellinger distance delta of uniform iff
///
///     1 - ((sqrt(1 + gamma) + sqrt(1 - gamma)) / 2)^n <= delta^2.
///
/// With b = (1 - delta^2)^(1/n) this is equivalent to
///
///     |gamma| <= gamma_max(n, delta) = 2 b sqrt(1 - b^2)
///
/// as long as 2 b^2 - 1 >= 0, i.e. delta <= delta_ceiling(n) = sqrt(1 - 2^(-n/2)).
/// Beyond that ceiling the squaring step is not an equivalence, so the bound
/// refuses to answer.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "repro/errors.hpp"
#include "repro/normal_quantile.hpp"

namespace repro {

/// Ties in the decision (gamma_D == gamma_max, d == delta) resolve as
/// "within tolerance" up to this absolute slack.
inline constexpr double kTieTolerance = 1e-12;

/// gamma_D = |eps - 2 sin(2 theta) (f - 1/2)|.
inline double gamma_device(double eps, double theta, double f) {
    if (!(std::abs(eps) <= 1.0) || !(f >= 0.0 && f <= 1.0) || !std::isfinite(theta)) {
        std::ostringstream os;
        os << "gamma_device needs |eps| <= 1, f in [0,1] and finite theta; got eps=" << eps << " f=" << f
           << " theta=" << theta;
        throw Error(ErrorKind::invalid_parameter, os.str());
    }
    return std::abs(eps - 2 * std::sin(2 * theta) * (f - 0.5));
}

/// Largest tolerance for which the gamma test is exact on n qubits.
inline double delta_ceiling(int n) {
    if (n < 1) {
        throw Error(ErrorKind::invalid_parameter, "qubit count must be positive");
    }
    return std::sqrt(-std::expm1(-0.5 * n * std::numbers::ln2));
}

namespace detail {

inline void require_regime(int n, double delta) {
    const double ceiling = delta_ceiling(n);
    if (!(delta >= 0.0)) {
        throw Error(ErrorKind::invalid_parameter, "tolerance delta must be non-negative");
    }
    if (delta > ceiling + kTieTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "delta=" << delta << " exceeds the validity ceiling delta*(" << n << ")=" << ceiling;
        throw OutOfRegimeError(os.str(), ceiling);
    }
}

}  // namespace detail

/// gamma_max(n, delta) = 2 (1 - delta^2)^(1/n) sqrt(1 - (1 - delta^2)^(2/n)).
inline double gamma_max(int n, double delta) {
    detail::require_regime(n, delta);
    // log1p/expm1 keep 1 - b^2 accurate when delta is tiny.
    const double log_a = std::log1p(-delta * delta);
    const double b = std::exp(log_a / n);
    const double one_minus_b2 = -std::expm1(2 * log_a / n);
    return 2 * b * std::sqrt(one_minus_b2);
}

struct ReproVerdict {
    int n = 1;
    double delta = 0;
    double gamma_D = 0;
    double gamma_max = 0;
    bool reproducible = false;
    double margin = 0;  // gamma_max - gamma_D
};

inline ReproVerdict verdict_for_gamma(int n, double delta, double gamma_D) {
    ReproVerdict v;
    v.n = n;
    v.delta = delta;
    v.gamma_D = std::abs(gamma_D);
    v.gamma_max = gamma_max(n, delta);
    v.reproducible = v.gamma_D <= v.gamma_max;
    v.margin = v.gamma_max - v.gamma_D;
    return v;
}

/// Decides reproducibility within Hellinger distance delta from device
/// characterization alone.
inline ReproVerdict verdict(int n, double delta, double eps, double theta, double f) {
    return verdict_for_gamma(n, delta, gamma_device(eps, theta, f));
}

/// Small-delta floor: a reproduction attempt must allow at least
/// (1/2) sqrt(n/2) gamma_D of Hellinger distance.
inline double min_delta(int n, double gamma_D) {
    if (n < 1) {
        throw Error(ErrorKind::invalid_parameter, "qubit count must be positive");
    }
    return 0.5 * std::sqrt(n / 2.0) * gamma_D;
}

/// Exact Hellinger distance between the one-qubit output ((1+g)/2, (1-g)/2)
/// and the uniform distribution.
inline double exact_hellinger_1q(double gamma) {
    if (!(std::abs(gamma) <= 1.0)) {
        throw Error(ErrorKind::invalid_parameter, "|gamma| must not exceed 1");
    }
    const double inner = 1 - (std::sqrt(1 + gamma) + std::sqrt(1 - gamma)) / 2;
    return std::sqrt(std::max(inner, 0.0));
}

struct LemmaCounterexample {
    double delta = 0;
    double gamma = 0;
    double gamma_max = 0;
    double distance = 0;
    bool bound_holds = false;     // gamma <= gamma_max(1, delta)
    bool distance_holds = false;  // d(gamma) <= delta
};

struct LemmaReport {
    std::size_t pairs_checked = 0;
    double tie_tolerance = kTieTolerance;
    std::vector<LemmaCounterexample> counterexamples;

    bool equivalent() const { return counterexamples.empty(); }
};

/// Checks (gamma <= gamma_max(1, delta)) <=> (d(gamma) <= delta) on every grid
/// pair. Counterexamples are returned, not thrown.
inline LemmaReport lemma_a1_check(std::span<const double> delta_grid, std::span<const double> gamma_grid,
                                  double tie_tolerance = kTieTolerance) {
    for (double delta : delta_grid) {
        detail::require_regime(1, delta);
    }
    for (double gamma : gamma_grid) {
        if (!(gamma >= 0.0 && gamma <= 1.0)) {
            throw Error(ErrorKind::invalid_parameter, "gamma grid values must lie in [0,1]");
        }
    }
    LemmaReport report;
    report.tie_tolerance = tie_tolerance;
    for (double delta : delta_grid) {
        const double gmax = gamma_max(1, delta);
        for (double gamma : gamma_grid) {
            const double d = exact_hellinger_1q(gamma);
            const bool bound = gamma <= gmax + tie_tolerance;
            const bool dist = d <= delta + tie_tolerance;
            ++report.pairs_checked;
            if (bound != dist) {
                report.counterexamples.push_back({delta, gamma, gmax, d, bound, dist});
            }
        }
    }
    return report;
}

struct SamplePlan {
    double p_s = 0;
    double epsilon_rel = 0;
    double alpha = 0;
    double z = 0;
    std::uint64_t shots = 0;  // T
};

/// Shots T needed so that the estimate of an outcome with probability p_s
/// lies within relative precision epsilon_rel at significance alpha:
/// T = ceil((1/p_s - 1) z^2 / epsilon_rel^2), at least 1.
inline SamplePlan plan_samples(double p_s, double epsilon_rel, double alpha) {
    if (!(p_s > 0.0 && p_s < 1.0)) {
        throw Error(ErrorKind::invalid_parameter, "outcome probability must lie strictly between 0 and 1");
    }
    if (!(epsilon_rel > 0.0 && epsilon_rel < 1.0)) {
        throw Error(ErrorKind::invalid_parameter, "relative precision must lie strictly between 0 and 1");
    }
    SamplePlan plan{p_s, epsilon_rel, alpha, two_sided_critical_value(alpha), 0};
    const double t = (1 / p_s - 1) * plan.z * plan.z / (epsilon_rel * epsilon_rel);
    if (!(t < 1.8e19)) {
        throw Error(ErrorKind::capacity, "required shot count does not fit in 64 bits");
    }
    plan.shots = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(t)));
    return plan;
}

}  // namespace repro
