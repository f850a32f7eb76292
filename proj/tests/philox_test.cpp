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

#include "repro/philox.hpp"

#include <random>
#include <set>

#include "gtest/gtest.h"

using namespace repro;

// Known-answer vectors published with the Random123 library.
TEST(philox, known_answer_vectors) {
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}), (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(philox, stream_is_reproducible_and_addressed_by_counter_words) {
    PhiloxStream a(42, 1, 2, 3);
    PhiloxStream b(42, 1, 2, 3);
    PhiloxStream c(42, 1, 2, 4);
    PhiloxStream d(43, 1, 2, 3);
    int same_c = 0, same_d = 0;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        EXPECT_EQ(x, b());
        same_c += x == c();
        same_d += x == d();
    }
    EXPECT_EQ(same_c, 0);
    EXPECT_EQ(same_d, 0);
}

TEST(philox, stream_words_come_from_consecutive_counters) {
    PhiloxStream s(0x0123456789abcdefULL, 7, 8, 9);
    const auto block0 = philox4x32_10({0, 7, 8, 9}, {0x89abcdef, 0x01234567});
    const auto block1 = philox4x32_10({1, 7, 8, 9}, {0x89abcdef, 0x01234567});
    EXPECT_EQ(s(), block0[0] | (std::uint64_t{block0[1]} << 32));
    EXPECT_EQ(s(), block0[2] | (std::uint64_t{block0[3]} << 32));
    EXPECT_EQ(s(), block1[0] | (std::uint64_t{block1[1]} << 32));
}

TEST(philox, uniform_lies_in_unit_interval_with_correct_mean) {
    PhiloxStream s(1, 0, 0, 0);
    double sum = 0;
    const int count = 200000;
    for (int i = 0; i < count; ++i) {
        const double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // sd of the mean is sqrt(1/12 / count) ~ 6.5e-4
    EXPECT_NEAR(sum / count, 0.5, 5 * 6.5e-4);
}

TEST(philox, works_with_standard_distributions) {
    static_assert(std::uniform_random_bit_generator<PhiloxStream>);
    PhiloxStream s(3, 0, 0, 0);
    std::bernoulli_distribution coin(0.25);
    int heads = 0;
    for (int i = 0; i < 10000; ++i) {
        heads += coin(s);
    }
    EXPECT_NEAR(heads / 10000.0, 0.25, 5 * std::sqrt(0.25 * 0.75 / 10000));
}
