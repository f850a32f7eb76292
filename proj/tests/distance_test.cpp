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

#include "repro/distance.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"

using namespace repro;

namespace {

// Independent oracle: evaluate p_s bit by bit straight from the product formula.
std::vector<double> brute_force_product(const std::vector<double> &gammas) {
    const std::size_t n = gammas.size();
    std::vector<double> p(std::size_t{1} << n);
    for (std::size_t s = 0; s < p.size(); ++s) {
        double v = 1;
        for (std::size_t i = 0; i < n; ++i) {
            const bool bit = (s >> i) & 1;
            v *= bit ? (1 - gammas[i]) / 2 : (1 + gammas[i]) / 2;
        }
        p[s] = v;
    }
    return p;
}

double brute_force_bc_vs_uniform(const std::vector<double> &gammas) {
    const auto p = brute_force_product(gammas);
    long double bc = 0;
    for (double v : p) {
        bc += std::sqrt(static_cast<long double>(v) / p.size());
    }
    return static_cast<double>(bc);
}

Distribution random_distribution(int n, std::mt19937_64 &rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(std::size_t{1} << n);
    double total = 0;
    for (auto &x : w) {
        x = e(rng);
        total += x;
    }
    for (auto &x : w) {
        x /= total;
    }
    return Distribution(n, w);
}

}  // namespace

TEST(distance, uniform_ideal) {
    EXPECT_EQ(uniform_ideal(1).probs()[0], 0.5);
    const auto u2 = uniform_ideal(2);
    for (double p : u2.probs()) {
        EXPECT_EQ(p, 0.25);
    }
    const auto u10 = uniform_ideal(10);
    ASSERT_EQ(u10.size(), 1024u);
    for (double p : u10.probs()) {
        EXPECT_EQ(p, 1.0 / 1024);
    }
    EXPECT_THROW(uniform_ideal(0), Error);
    EXPECT_THROW(uniform_ideal(21), Error);
    try {
        uniform_ideal(21);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::capacity);
    }
}

TEST(distance, distribution_validation) {
    EXPECT_THROW(Distribution(1, {0.5}), Error);
    EXPECT_THROW(Distribution(1, {0.7, 0.7}), Error);
    EXPECT_THROW(Distribution(1, {1.5, -0.5}), Error);
    EXPECT_NO_THROW(Distribution(1, {0.5, 0.5 + 1e-10}));
}

TEST(distance, product_noisy) {
    const auto flat = product_noisy(GammaVector({0.0}));
    EXPECT_EQ(flat[0], 0.5);
    EXPECT_EQ(flat[1], 0.5);
    const auto biased = product_noisy(GammaVector({0.2}));
    EXPECT_NEAR(biased[0], 0.6, 1e-15);
    EXPECT_NEAR(biased[1], 0.4, 1e-15);
    const std::vector<double> g{0.2, -0.4};
    const auto two = product_noisy(GammaVector(g));
    const auto oracle = brute_force_product(g);
    for (std::size_t s = 0; s < 4; ++s) {
        EXPECT_NEAR(two[s], oracle[s], 1e-15) << "outcome " << s;
    }
    // Bit convention: s = 1 means qubit 0 read 1, qubit 1 read 0.
    EXPECT_NEAR(two[1], 0.4 * 0.3, 1e-15);
}

TEST(distance, gamma_vector_validation) {
    EXPECT_THROW(GammaVector({}), Error);
    EXPECT_THROW(GammaVector({1.01}), Error);
    EXPECT_NO_THROW(GammaVector({-1.0, 1.0}));
}

TEST(distance, bhattacharyya_and_hellinger_examples) {
    const auto half = Distribution(1, {0.5, 0.5});
    const auto zero = Distribution(1, {1, 0});
    const auto one = Distribution(1, {0, 1});
    EXPECT_DOUBLE_EQ(bhattacharyya(half, half), 1.0);
    EXPECT_DOUBLE_EQ(bhattacharyya(zero, one), 0.0);
    EXPECT_NEAR(bhattacharyya(zero, half), std::sqrt(0.5), 1e-15);
    EXPECT_DOUBLE_EQ(hellinger(half, half), 0.0);
    EXPECT_DOUBLE_EQ(hellinger(zero, one), 1.0);
    EXPECT_NEAR(hellinger(zero, half), 0.541196100146196984399723205366, 1e-12);
}

TEST(distance, dimension_mismatch_is_a_shape_error) {
    try {
        hellinger(uniform_ideal(1), uniform_ideal(2));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::shape);
    }
}

TEST(distance, bc_closed_form_examples) {
    EXPECT_DOUBLE_EQ(bc_uniform_closed_form(GammaVector::uniform(4, 0.0)), 1.0);
    // (sqrt(1.3) + sqrt(0.7)) / 2 to 30 digits.
    EXPECT_NEAR(bc_uniform_closed_form(GammaVector({0.3})), 0.988417725816606763557110525676, 1e-15);
    EXPECT_NEAR(bc_uniform_closed_form(GammaVector::uniform(3, 0.1)), brute_force_bc_vs_uniform({0.1, 0.1, 0.1}),
                1e-12);
}

TEST(distance, binomial_collapse_matches_brute_force) {
    for (int n = 1; n <= 10; ++n) {
        for (int k = -9; k <= 9; ++k) {
            const double g = k / 10.0;
            const double closed = std::pow((std::sqrt(1 + g) + std::sqrt(1 - g)) / 2, n);
            const double brute = bhattacharyya(uniform_ideal(n), product_noisy(GammaVector::uniform(n, g)));
            EXPECT_NEAR(1 - brute, 1 - closed, 1e-10) << "n=" << n << " gamma=" << g;
        }
    }
}

TEST(distance, bc_factorizes_for_heterogeneous_gammas) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> g(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 8;
        std::vector<double> gammas(static_cast<std::size_t>(n));
        for (auto &x : gammas) {
            x = g(rng);
        }
        const GammaVector gv(gammas);
        EXPECT_NEAR(bhattacharyya(uniform_ideal(n), product_noisy(gv)), bc_uniform_closed_form(gv), 1e-10);
        EXPECT_NEAR(bc_uniform_closed_form(gv), brute_force_bc_vs_uniform(gammas), 1e-12);
    }
}

TEST(distance, hellinger_is_a_metric_on_random_triples) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 4;
        const auto p = random_distribution(n, rng);
        const auto q = random_distribution(n, rng);
        const auto r = random_distribution(n, rng);
        EXPECT_NEAR(hellinger(p, q), hellinger(q, p), 1e-9);
        EXPECT_NEAR(hellinger(p, p), 0.0, 1e-7);  // sqrt of a ~1e-16 residual
        EXPECT_LE(hellinger(p, r), hellinger(p, q) + hellinger(q, r) + 1e-9);
        const double d = hellinger(p, q);
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 1.0);
    }
}

TEST(distance, single_qubit_hellinger_grows_with_bias) {
    double previous = 0;
    for (int i = 0; i <= 200; ++i) {
        const double g = i / 200.0;
        const double d = hellinger(uniform_ideal(1), product_noisy(GammaVector({g})));
        const double d_neg = hellinger(uniform_ideal(1), product_noisy(GammaVector({-g})));
        EXPECT_GE(d, previous);
        EXPECT_NEAR(d, d_neg, 1e-12);
        previous = d;
    }
}

TEST(distance, empirical_distribution) {
    const std::vector<std::uint32_t> balanced{0, 0, 1, 1};
    const auto e1 = empirical_distribution(balanced, 1);
    EXPECT_EQ(e1[0], 0.5);
    EXPECT_EQ(e1[1], 0.5);
    const std::vector<std::uint32_t> zeros(8192, 0);
    EXPECT_EQ(empirical_distribution(zeros, 1)[0], 1.0);
    std::vector<std::uint32_t> strings;
    for (const char *s : {"00", "01", "01", "11"}) {
        strings.push_back(outcome_from_bitstring(s));
    }
    const auto e2 = empirical_distribution(strings, 2);
    EXPECT_EQ(e2[0], 0.25);
    EXPECT_EQ(e2[1], 0.5);
    EXPECT_EQ(e2[2], 0.0);
    EXPECT_EQ(e2[3], 0.25);
    EXPECT_THROW(empirical_distribution(std::vector<std::uint32_t>{}, 1), Error);
    EXPECT_THROW(empirical_distribution(std::vector<std::uint32_t>{2}, 1), Error);
    EXPECT_THROW(outcome_from_bitstring("0a"), Error);
}

TEST(distance, compensated_sum_keeps_small_terms) {
    std::vector<double> v{1.0};
    for (int i = 0; i < 1000; ++i) {
        v.push_back(1e-17);
    }
    // A naive left-to-right sum would return exactly 1.
    EXPECT_NEAR(compensated_sum(v) - 1.0, 1e-14, 1e-15);
}

TEST(distance, twenty_qubit_identity_holds) {
    const auto gv = GammaVector::uniform(20, 0.05);
    EXPECT_NEAR(bhattacharyya(uniform_ideal(20), product_noisy(gv)), bc_uniform_closed_form(gv), 1e-10);
}
