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
/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A stream is fully addressed by a 64-bit key and three 32-bit counter words;
/// the fourth counter word indexes draws within the stream. Any block of
/// output can therefore be regenerated independently of every other block,
/// in any order and on any thread.

#include <array>
#include <cstdint>
#include <limits>

namespace repro {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

constexpr void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &lo, std::uint32_t &hi) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(product);
    hi = static_cast<std::uint32_t>(product >> 32);
}

constexpr PhiloxCounter philox_round(const PhiloxCounter &ctr, const PhiloxKey &key) {
    std::uint32_t lo0 = 0, hi0 = 0, lo1 = 0, hi1 = 0;
    mulhilo(kPhiloxM0, ctr[0], lo0, hi0);
    mulhilo(kPhiloxM1, ctr[2], lo1, hi1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace detail

/// The raw bijection: 10 rounds with a Weyl key schedule.
constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
    ctr = detail::philox_round(ctr, key);
    for (int round = 1; round < 10; ++round) {
        key[0] += detail::kPhiloxW0;
        key[1] += detail::kPhiloxW1;
        ctr = detail::philox_round(ctr, key);
    }
    return ctr;
}

/// Sequential view of one Philox stream. Satisfies
/// std::uniform_random_bit_generator with 64-bit output.
class PhiloxStream {
   public:
    using result_type = std::uint64_t;

    PhiloxStream(std::uint64_t seed, std::uint32_t a, std::uint32_t b, std::uint32_t c)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, ctr_{0, a, b, c} {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (cached_ == 0) {
            block_ = philox4x32_10(ctr_, key_);
            ++ctr_[0];
            cached_ = 2;
        }
        const int word = 2 * (2 - cached_);
        --cached_;
        return static_cast<std::uint64_t>(block_[word]) | (static_cast<std::uint64_t>(block_[word + 1]) << 32);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

   private:
    PhiloxKey key_;
    PhiloxCounter ctr_;
    PhiloxCounter block_{};
    int cached_ = 0;
};

}  // namespace repro
