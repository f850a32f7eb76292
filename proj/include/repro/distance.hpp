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
/// Dense distributions over n-bit outcomes and the two statistics used to
/// compare them: the Bhattacharyya coefficient and the Hellinger distance.
///
/// Bit order: outcome index s = sum_i 2^i s_i, so qubit i is bit i of s
/// (qubit 0 is the least significant bit). A bitstring written as text is
/// read most-significant first, "s_{n-1} ... s_1 s_0".

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repro/errors.hpp"
#include "repro/log.hpp"
#include "repro/noise_model.hpp"

namespace repro {

/// Largest register handled by the dense representation (2^20 doubles).
inline constexpr int kMaxQubits = 20;

/// Neumaier-compensated accumulator.
class CompensatedSum {
   public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + carry_; }

   private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

template <typename Range>
double compensated_sum(const Range &values) {
    CompensatedSum acc;
    for (double v : values) {
        acc.add(v);
    }
    return acc.value();
}

namespace detail {

inline void require_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw Error(ErrorKind::capacity,
                    "qubit count " + std::to_string(n) + " outside supported range [1," +
                        std::to_string(kMaxQubits) + "]");
    }
}

}  // namespace detail

/// Probability vector over the 2^n outcomes of an n-qubit register.
class Distribution {
   public:
    /// Validates length 2^n, non-negative entries and unit sum within 1e-9.
    Distribution(int n, std::vector<double> probs) : n_(n), probs_(std::move(probs)) {
        detail::require_qubit_count(n);
        if (probs_.size() != (std::size_t{1} << n)) {
            throw Error(ErrorKind::shape, "distribution over " + std::to_string(n) + " qubits needs " +
                                              std::to_string(std::size_t{1} << n) + " entries, got " +
                                              std::to_string(probs_.size()));
        }
        for (double p : probs_) {
            if (!(p >= 0.0) || !std::isfinite(p)) {
                throw Error(ErrorKind::invalid_parameter, "distribution entries must be finite and non-negative");
            }
        }
        if (std::abs(compensated_sum(probs_) - 1.0) > 1e-9) {
            throw Error(ErrorKind::invalid_parameter, "distribution does not sum to 1");
        }
    }

    static Distribution from_binary(const BinaryDist &p) { return Distribution(1, {p[0], p[1]}); }

    int qubits() const { return n_; }
    std::size_t size() const { return probs_.size(); }
    std::span<const double> probs() const { return probs_; }
    double operator[](std::size_t s) const { return probs_[s]; }

    bool operator==(const Distribution &) const = default;

   private:
    int n_;
    std::vector<double> probs_;
};

/// One composite parameter gamma_i per register element, each |gamma_i| <= 1.
class GammaVector {
   public:
    explicit GammaVector(std::vector<double> gammas) : gammas_(std::move(gammas)) {
        if (gammas_.empty()) {
            throw Error(ErrorKind::empty_data, "gamma vector is empty");
        }
        detail::require_qubit_count(static_cast<int>(gammas_.size()));
        for (double g : gammas_) {
            if (!(std::abs(g) <= 1.0)) {
                throw Error(ErrorKind::invalid_parameter, "each gamma must satisfy |gamma| <= 1");
            }
        }
    }

    static GammaVector uniform(int n, double gamma) {
        detail::require_qubit_count(n);
        return GammaVector(std::vector<double>(static_cast<std::size_t>(n), gamma));
    }

    int qubits() const { return static_cast<int>(gammas_.size()); }
    std::span<const double> values() const { return gammas_; }
    double operator[](std::size_t i) const { return gammas_[i]; }

   private:
    std::vector<double> gammas_;
};

inline Distribution uniform_ideal(int n) {
    detail::require_qubit_count(n);
    const std::size_t size = std::size_t{1} << n;
    return Distribution(n, std::vector<double>(size, std::ldexp(1.0, -n)));
}

/// Noisy output of H on every qubit with independent per-qubit bias gamma_i:
/// p_s = prod_i ((1 + g_i)/2)^(1 - s_i) ((1 - g_i)/2)^(s_i).
inline Distribution product_noisy(const GammaVector &gammas) {
    const int n = gammas.qubits();
    std::vector<double> probs{1.0};
    probs.reserve(std::size_t{1} << n);
    for (int i = 0; i < n; ++i) {
        const double p0 = (1 + gammas[i]) / 2;
        const double p1 = (1 - gammas[i]) / 2;
        const std::size_t half = probs.size();
        probs.resize(2 * half);
        for (std::size_t s = 0; s < half; ++s) {
            probs[s + half] = probs[s] * p1;
            probs[s] *= p0;
        }
    }
    return Distribution(n, std::move(probs));
}

inline double bhattacharyya(const Distribution &p, const Distribution &q) {
    if (p.qubits() != q.qubits()) {
        throw Error(ErrorKind::shape, "distributions over " + std::to_string(p.qubits()) + " and " +
                                          std::to_string(q.qubits()) + " qubits");
    }
    CompensatedSum acc;
    for (std::size_t s = 0; s < p.size(); ++s) {
        acc.add(std::sqrt(p[s] * q[s]));
    }
    return acc.value();
}

namespace detail {

/// sqrt(1 - bc) with bc clamped into [0, 1] first.
inline double hellinger_from_bc(double bc) {
    if (bc > 1.0 || bc < 0.0) {
        log_debug("Bhattacharyya coefficient " + std::to_string(bc) + " clamped into [0,1]");
        bc = std::clamp(bc, 0.0, 1.0);
    }
    return std::sqrt(1.0 - bc);
}

}  // namespace detail

inline double hellinger(const Distribution &p, const Distribution &q) {
    return detail::hellinger_from_bc(bhattacharyya(p, q));
}

/// BC(uniform, product_noisy(gammas)) in factorized form,
/// prod_i (sqrt(1 + g_i) + sqrt(1 - g_i)) / 2. For identical gammas this is
/// ((sqrt(1 + g) + sqrt(1 - g)) / 2)^n.
inline double bc_uniform_closed_form(const GammaVector &gammas) {
    double bc = 1.0;
    for (double g : gammas.values()) {
        bc *= (std::sqrt(1 + g) + std::sqrt(1 - g)) / 2;
    }
    return bc;
}

/// Parses "s_{n-1}...s_0" into the outcome index s.
inline std::uint32_t outcome_from_bitstring(std::string_view bits) {
    if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxQubits)) {
        throw Error(ErrorKind::shape, "bitstring length outside [1," + std::to_string(kMaxQubits) + "]");
    }
    std::uint32_t s = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error(ErrorKind::invalid_parameter, "bitstring may only contain 0 and 1");
        }
        s = (s << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return s;
}

/// Histogram of observed outcome indices, normalized by the shot count.
inline Distribution empirical_distribution(std::span<const std::uint32_t> outcomes, int n) {
    detail::require_qubit_count(n);
    if (outcomes.empty()) {
        throw Error(ErrorKind::empty_data, "no shots to histogram");
    }
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::uint64_t> counts(size, 0);
    for (std::uint32_t s : outcomes) {
        if (s >= size) {
            throw Error(ErrorKind::shape, "outcome " + std::to_string(s) + " does not fit in " + std::to_string(n) +
                                              " bits");
        }
        ++counts[s];
    }
    const auto total = static_cast<double>(outcomes.size());
    std::vector<double> probs(size);
    std::transform(counts.begin(), counts.end(), probs.begin(),
                   [total](std::uint64_t c) { return static_cast<double>(c) / total; });
    return Distribution(n, std::move(probs));
}

}  // namespace repro
