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
/// Monte Carlo emulation of the characterization protocol. For every
/// register element and every experiment l = 0..L-1, three circuits are run
/// for S shots each:
///
///   spam0  prepare |0>, measure            Pr(1) = 1 - f0
///   spam1  prepare |1>, measure            Pr(1) = f1
///   c      prepare |0>, noisy H, measure   Pr(0) = (1 + gamma) / 2
///
/// Shots are i.i.d. Bernoulli draws. The random stream of block
/// (kind, qubit, experiment) is Philox keyed by the master seed with counter
/// words (experiment, qubit, kind), so blocks can be produced in any order.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "repro/distance.hpp"
#include "repro/errors.hpp"
#include "repro/noise_model.hpp"
#include "repro/philox.hpp"
#include "repro/version.hpp"

namespace repro {

enum class CircuitKind : std::uint8_t { spam0 = 0, spam1 = 1, c = 2 };

inline constexpr std::array<CircuitKind, 3> kAllCircuitKinds{CircuitKind::spam0, CircuitKind::spam1,
                                                             CircuitKind::c};

inline std::string_view circuit_kind_name(CircuitKind kind) {
    switch (kind) {
        case CircuitKind::spam0: return "spam0";
        case CircuitKind::spam1: return "spam1";
        case CircuitKind::c: return "c";
    }
    return "?";
}

inline std::optional<CircuitKind> parse_circuit_kind(std::string_view name) {
    for (CircuitKind k : kAllCircuitKinds) {
        if (circuit_kind_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

/// S binary outcomes of one (kind, qubit, experiment) triple, packed
/// 8 per byte with shot s at bit (s % 8) of byte (s / 8).
class ShotBlock {
   public:
    ShotBlock() = default;

    ShotBlock(CircuitKind kind, int qubit, int experiment, std::uint64_t shots, std::vector<std::uint8_t> packed)
        : kind_(kind), qubit_(qubit), experiment_(experiment), shots_(shots), packed_(std::move(packed)) {
        if (packed_.size() != (shots_ + 7) / 8) {
            throw Error(ErrorKind::shape, "packed buffer of " + std::to_string(packed_.size()) + " bytes cannot hold " +
                                              std::to_string(shots_) + " shots");
        }
        if (shots_ % 8 != 0 && !packed_.empty()) {
            // Padding bits are always zero so byte-level equality is meaningful.
            packed_.back() &= static_cast<std::uint8_t>((1u << (shots_ % 8)) - 1);
        }
        for (std::uint8_t byte : packed_) {
            ones_ += static_cast<std::uint64_t>(std::popcount(byte));
        }
    }

    static ShotBlock from_bits(CircuitKind kind, int qubit, int experiment, std::span<const int> bits) {
        std::vector<std::uint8_t> packed((bits.size() + 7) / 8, 0);
        for (std::size_t s = 0; s < bits.size(); ++s) {
            if (bits[s] != 0 && bits[s] != 1) {
                throw Error(ErrorKind::invalid_parameter, "shot outcomes must be 0 or 1");
            }
            packed[s / 8] |= static_cast<std::uint8_t>(bits[s] << (s % 8));
        }
        return ShotBlock(kind, qubit, experiment, bits.size(), std::move(packed));
    }

    CircuitKind kind() const { return kind_; }
    int qubit() const { return qubit_; }
    int experiment() const { return experiment_; }
    std::uint64_t shots() const { return shots_; }
    std::uint64_t ones() const { return ones_; }
    std::span<const std::uint8_t> packed() const { return packed_; }

    int bit(std::uint64_t s) const { return (packed_[s / 8] >> (s % 8)) & 1; }

    bool operator==(const ShotBlock &) const = default;

   private:
    CircuitKind kind_ = CircuitKind::spam0;
    int qubit_ = 0;
    int experiment_ = 0;
    std::uint64_t shots_ = 0;
    std::vector<std::uint8_t> packed_;
    std::uint64_t ones_ = 0;
};

/// Stream for one block, derived solely from (seed, kind, qubit, experiment).
inline PhiloxStream block_stream(std::uint64_t seed, CircuitKind kind, int qubit, int experiment) {
    return PhiloxStream(seed, static_cast<std::uint32_t>(experiment), static_cast<std::uint32_t>(qubit),
                        static_cast<std::uint32_t>(kind));
}

/// S independent draws with Pr(bit = 1) = prob_one. prob_one of exactly 0 or
/// 1 gives constant blocks.
inline std::vector<std::uint8_t> draw_bernoulli_packed(double prob_one, std::uint64_t shots, PhiloxStream &rng) {
    std::vector<std::uint8_t> packed((shots + 7) / 8, 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        if (rng.uniform() < prob_one) {
            packed[s / 8] |= static_cast<std::uint8_t>(1u << (s % 8));
        }
    }
    return packed;
}

namespace detail {

inline void require_shots(std::uint64_t shots) {
    if (shots == 0) {
        throw Error(ErrorKind::invalid_parameter, "shot count must be positive");
    }
}

inline ShotBlock run_kind(CircuitKind kind, const QubitNoiseParams &params, std::uint64_t shots, PhiloxStream &rng,
                          int qubit, int experiment) {
    detail::require_shots(shots);
    detail::require_fidelities(params.f0, params.f1);
    double prob_one = 0.0;
    switch (kind) {
        case CircuitKind::spam0: prob_one = 1 - params.f0; break;
        case CircuitKind::spam1: prob_one = params.f1; break;
        case CircuitKind::c: prob_one = observed_probs(params)[1]; break;
    }
    return ShotBlock(kind, qubit, experiment, shots, draw_bernoulli_packed(prob_one, shots, rng));
}

}  // namespace detail

/// Prepare |0>, measure. Pr(1) = 1 - f0.
inline ShotBlock run_spam0(const QubitNoiseParams &params, std::uint64_t shots, PhiloxStream &rng, int qubit = 0,
                           int experiment = 0) {
    return detail::run_kind(CircuitKind::spam0, params, shots, rng, qubit, experiment);
}

/// Prepare |1>, measure. Pr(1) = f1.
inline ShotBlock run_spam1(const QubitNoiseParams &params, std::uint64_t shots, PhiloxStream &rng, int qubit = 0,
                           int experiment = 0) {
    return detail::run_kind(CircuitKind::spam1, params, shots, rng, qubit, experiment);
}

/// Prepare |0>, noisy Hadamard, measure. Pr(0) = (1 + gamma) / 2.
inline ShotBlock run_circuit_c(const QubitNoiseParams &params, std::uint64_t shots, PhiloxStream &rng, int qubit = 0,
                               int experiment = 0) {
    return detail::run_kind(CircuitKind::c, params, shots, rng, qubit, experiment);
}

struct QubitSpec {
    int index = 0;
    QubitNoiseParams params;

    bool operator==(const QubitSpec &) const = default;
};

/// Per-experiment parameter perturbation: (ground truth, qubit index,
/// experiment) -> parameters used for that experiment's three blocks.
using DriftHook = std::function<QubitNoiseParams(const QubitNoiseParams &, int, int)>;

struct ExperimentPlan {
    int experiments = 2;       // L
    std::uint64_t shots = 1;   // S
    std::vector<QubitSpec> qubits;
    std::uint64_t seed = 0;
    DriftHook drift;  // empty: no drift

    void validate() const {
        if (experiments < 2) {
            throw Error(ErrorKind::invalid_parameter, "plan needs L >= 2 experiments, got " + std::to_string(experiments));
        }
        if (shots < 1) {
            throw Error(ErrorKind::invalid_parameter, "plan needs S >= 1 shots");
        }
        if (qubits.empty()) {
            throw Error(ErrorKind::invalid_parameter, "plan has no qubits");
        }
        for (const auto &q : qubits) {
            if (q.index < 0) {
                throw Error(ErrorKind::invalid_parameter, "qubit indices must be non-negative");
            }
            detail::require_fidelities(q.params.f0, q.params.f1);
            detail::require_finite_angle(q.params.theta);
        }
    }

    std::size_t block_count() const { return kAllCircuitKinds.size() * qubits.size() * static_cast<std::size_t>(experiments); }

    /// Position of block (kind, qubit position, experiment) in RunArchive::blocks.
    std::size_t block_position(CircuitKind kind, std::size_t qubit_pos, int experiment) const {
        return (static_cast<std::size_t>(kind) * qubits.size() + qubit_pos) * static_cast<std::size_t>(experiments) +
               static_cast<std::size_t>(experiment);
    }
};

/// Number of worker threads: REPRO_BOUND_THREADS if set and positive,
/// otherwise the hardware concurrency.
inline unsigned default_thread_count() {
    if (const char *env = std::getenv("REPRO_BOUND_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

struct RunManifest {
    std::string toolkit_version;
    std::string started_utc;
    std::string finished_utc;
    bool complete = false;
};

struct RunArchive {
    ExperimentPlan plan;
    std::vector<ShotBlock> blocks;  // ordered by ExperimentPlan::block_position
    RunManifest manifest;

    const ShotBlock &block(CircuitKind kind, std::size_t qubit_pos, int experiment) const {
        return blocks.at(plan.block_position(kind, qubit_pos, experiment));
    }
};

/// Generates every block of the plan. The result depends only on the plan,
/// never on the thread count or scheduling.
inline std::vector<ShotBlock> run_plan_blocks(const ExperimentPlan &plan, unsigned threads = default_thread_count()) {
    plan.validate();
    std::vector<ShotBlock> blocks(plan.block_count());
    const std::size_t per_kind = plan.qubits.size() * static_cast<std::size_t>(plan.experiments);

    auto produce = [&](std::size_t pos) {
        const auto kind = static_cast<CircuitKind>(pos / per_kind);
        const std::size_t qubit_pos = (pos % per_kind) / static_cast<std::size_t>(plan.experiments);
        const int experiment = static_cast<int>(pos % static_cast<std::size_t>(plan.experiments));
        const QubitSpec &q = plan.qubits[qubit_pos];
        const QubitNoiseParams params = plan.drift ? plan.drift(q.params, q.index, experiment) : q.params;
        PhiloxStream rng = block_stream(plan.seed, kind, q.index, experiment);
        blocks[pos] = detail::run_kind(kind, params, plan.shots, rng, q.index, experiment);
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks.size())));
    if (threads == 1) {
        for (std::size_t pos = 0; pos < blocks.size(); ++pos) {
            produce(pos);
        }
        return blocks;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            (void)t;
            for (std::size_t pos = next++; pos < blocks.size() && !failed; pos = next++) {
                try {
                    produce(pos);
                } catch (...) {
                    if (!failed.exchange(true)) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &w : workers) {
        w.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return blocks;
}

/// Runs the plan into an in-memory archive with a provenance manifest.
inline RunArchive run_plan(const ExperimentPlan &plan, unsigned threads = default_thread_count()) {
    RunArchive archive{plan, {}, {kToolkitVersion, utc_now(), {}, false}};
    archive.blocks = run_plan_blocks(plan, threads);
    archive.manifest.finished_utc = utc_now();
    archive.manifest.complete = true;
    return archive;
}

/// Combines same-experiment blocks of several qubits into n-bit outcomes;
/// block i supplies bit i of every outcome.
inline Distribution empirical_distribution(std::span<const ShotBlock> per_qubit_blocks) {
    if (per_qubit_blocks.empty()) {
        throw Error(ErrorKind::empty_data, "no shot blocks");
    }
    const std::uint64_t shots = per_qubit_blocks.front().shots();
    for (const auto &b : per_qubit_blocks) {
        if (b.shots() != shots) {
            throw Error(ErrorKind::shape, "shot blocks differ in length");
        }
    }
    std::vector<std::uint32_t> outcomes(shots, 0);
    for (std::size_t i = 0; i < per_qubit_blocks.size(); ++i) {
        for (std::uint64_t s = 0; s < shots; ++s) {
            outcomes[s] |= static_cast<std::uint32_t>(per_qubit_blocks[i].bit(s)) << i;
        }
    }
    return empirical_distribution(outcomes, static_cast<int>(per_qubit_blocks.size()));
}

}  // namespace repro
