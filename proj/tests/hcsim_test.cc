// Copyright 2026 The hcut Authors
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

#include "hcut/hcsim.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace hcut;
using hcut_test::max_abs_diff;

namespace {

StateVector bell() {
    double r = 1.0 / std::sqrt(2.0);
    return StateVector({r, 0.0, 0.0, r});
}

/// p_t by direct summation of the character sum, no butterfly.
std::vector<double> fourier_sum(const PurityTable &table, unsigned t) {
    std::vector<double> powered(table.values.size());
    for (std::size_t s = 0; s < powered.size(); s++) {
        powered[s] = std::pow(table.values[s], static_cast<double>(t));
    }
    return hcut_test::inverse_walsh_by_definition(powered);
}

std::vector<std::uint64_t> support_bits(const OutcomeDistribution &d) {
    std::vector<std::uint64_t> out;
    for (const auto &m : support(d)) {
        out.push_back(m.bits());
    }
    return out;
}

}  // namespace

TEST(exact_distribution, bell_state) {
    auto d1 = exact_distribution(purity_table(bell()), 1);
    ASSERT_LT(max_abs_diff(d1.probs, {0.75, 0.0, 0.0, 0.25}), 1e-15);
    auto d2 = exact_distribution(purity_table(bell()), 2);
    ASSERT_LT(max_abs_diff(d2.probs, {0.625, 0.0, 0.0, 0.375}), 1e-15);
    ASSERT_THROW(exact_distribution(purity_table(bell()), 0), DomainError);
}

TEST(exact_distribution, matches_character_sum) {
    for (unsigned n = 1; n <= 6; n++) {
        auto table = purity_table(haar_random_state(n, 60 + n));
        for (unsigned t : {1u, 2u, 7u}) {
            ASSERT_LT(max_abs_diff(exact_distribution(table, t).probs, fourier_sum(table, t)), 1e-12);
        }
    }
}

TEST(exact_distribution, product_state_support_is_annihilator) {
    auto psi = tensor_product({haar_random_state(2, 11), haar_random_state(2, 12)});
    auto table = purity_table(psi);
    for (unsigned t : {1u, 2u, 5u, 50u}) {
        ASSERT_EQ(support_bits(exact_distribution(table, t)), (std::vector<std::uint64_t>{0, 3, 12, 15}));
    }
    auto far = exact_distribution(table, 100);
    for (std::uint64_t x : {0, 3, 12, 15}) {
        ASSERT_NEAR(far.probs[x], 0.25, 1e-6);
    }
}

TEST(exact_distribution, rejects_invalid_purity_table) {
    // Inverse transform gives p(11) = -1/4.
    PurityTable bad{2, {1.0, 1.0, 1.0, 0.0}};
    ASSERT_THROW(exact_distribution(bad, 1), ConsistencyError);
}

TEST(exact_distribution, annihilator_and_support_stability) {
    std::vector<StateVector> states{
        haar_random_state(4, 1),
        tensor_product({haar_random_state(1, 2), haar_random_state(3, 3)}),
        tensor_product({haar_random_state(2, 4), haar_random_state(1, 5), haar_random_state(2, 6)}),
    };
    for (const auto &psi : states) {
        auto table = purity_table(psi);
        auto base = support_bits(exact_distribution(table, 1));
        for (unsigned t : {2u, 3u, 8u, 30u}) {
            auto d = exact_distribution(table, t);
            ASSERT_EQ(support_bits(d), base);
            for (std::uint64_t s = 0; s < table.values.size(); s++) {
                if (table.values[s] > 1.0 - 1e-12) {
                    for (std::uint64_t x : base) {
                        ASSERT_EQ(parity(x & s), 0);
                    }
                }
            }
        }
    }
}

TEST(exact_distribution, entropy_nondecreasing_toward_annihilator_size) {
    auto psi = tensor_product({haar_random_state(3, 40), haar_random_state(2, 41)});
    auto table = purity_table(psi);
    double prev = -1.0;
    for (unsigned t = 1; t <= 200; t += (t < 10 ? 1 : 19)) {
        double h = entropy_bits(exact_distribution(table, t));
        ASSERT_GE(h, prev - 1e-12) << t;
        prev = h;
    }
    // H = {0, 11100, 00011, 1}; |H^perp| = 32 / 4.
    ASSERT_LE(prev, 3.0 + 1e-12);
    ASSERT_GT(prev, 2.99);
}

TEST(distribution_by_convolution, bell_and_random_agreement) {
    auto p1 = exact_distribution(purity_table(bell()), 1);
    ASSERT_EQ(distribution_by_convolution(p1, 1).probs, p1.probs);
    ASSERT_LT(max_abs_diff(distribution_by_convolution(p1, 2).probs, convolve(p1.probs, p1.probs)), 1e-15);
    ASSERT_LT(max_abs_diff(distribution_by_convolution(p1, 2).probs, {0.625, 0.0, 0.0, 0.375}), 1e-15);

    for (std::uint64_t seed = 0; seed < 3; seed++) {
        auto table = purity_table(haar_random_state(4, seed));
        auto q1 = exact_distribution(table, 1);
        for (unsigned t = 1; t <= 32; t++) {
            ASSERT_LT(max_abs_diff(distribution_by_convolution(q1, t).probs, exact_distribution(table, t).probs), 1e-10);
        }
    }
}

TEST(simulate_circuit_direct, examples) {
    auto d = simulate_circuit_direct(bell(), 1);
    ASSERT_LT(max_abs_diff(d.probs, {0.75, 0.0, 0.0, 0.25}), 1e-12);

    auto zero = simulate_circuit_direct(StateVector::basis(2, 0), 1);
    ASSERT_NEAR(zero.probs[0], 1.0, 1e-12);

    auto haar = simulate_circuit_direct(haar_random_state(4, 17), 1);
    for (std::uint64_t x = 0; x < 16; x++) {
        ASSERT_EQ(haar.probs[x] > kSupportThreshold, parity(x) == 0) << x;
    }
    ASSERT_THROW(simulate_circuit_direct(haar_random_state(5, 1), 2), CapacityError);
}

TEST(simulate_circuit_direct, agrees_with_fourier_identity) {
    for (unsigned n = 2; n <= 3; n++) {
        for (unsigned t = 1; t <= 2; t++) {
            auto psi = haar_random_state(n, 7 * n + t);
            ASSERT_LT(max_abs_diff(simulate_circuit_direct(psi, t).probs,
                                   exact_distribution(purity_table(psi), t).probs), 1e-9);
        }
    }
}

TEST(sample, determinism_and_delta) {
    auto d = exact_distribution(purity_table(bell()), 1);
    auto a = sample(d, 100, 5);
    auto b = sample(d, 100, 5);
    ASSERT_EQ(a.samples, b.samples);
    ASSERT_EQ(a.shots(), 100u);

    OutcomeDistribution delta{3, 1, std::vector<double>(8, 0.0)};
    delta.probs[5] = 1.0;
    for (const auto &x : sample(delta, 50, 9).samples) {
        ASSERT_EQ(x.bits(), 5u);
    }
}

TEST(sample, bell_frequency_within_three_sigma) {
    auto d = exact_distribution(purity_table(bell()), 1);
    const std::size_t shots = 100000;
    std::size_t zeros = 0;
    for (const auto &x : sample(d, shots, 2024).samples) {
        ASSERT_TRUE(x.bits() == 0 || x.bits() == 3);
        zeros += x.bits() == 0;
    }
    double sigma = std::sqrt(0.75 * 0.25 / shots);
    ASSERT_NEAR(static_cast<double>(zeros) / shots, 0.75, 3.0 * sigma);
}

TEST(swap_test_bernoulli, examples) {
    for (const auto &x : swap_test_bernoulli(1.0, 3, 100, 1).samples) {
        ASSERT_EQ(x.bits(), 0u);
    }
    const std::size_t m = 100000;
    for (auto [p, t] : {std::pair{0.0, 1u}, std::pair{0.8, 3u}}) {
        auto set = swap_test_bernoulli(p, t, m, 77);
        std::size_t ones = 0;
        for (const auto &x : set.samples) {
            ones += x.bits();
        }
        double mu = 0.5 * (1.0 - std::pow(p, t));
        ASSERT_NEAR(static_cast<double>(ones) / m, mu, 3.0 * std::sqrt(mu * (1.0 - mu) / m));
    }
    ASSERT_THROW(swap_test_bernoulli(1.1, 1, 10, 1), DomainError);
}

TEST(all_zeros_probability, matches_distribution_and_decreases) {
    PurityTable ones{3, std::vector<double>(8, 1.0)};
    ASSERT_EQ(all_zeros_probability(ones, 4), 1.0);
    ASSERT_NEAR(all_zeros_probability(purity_table(bell()), 1), 0.75, 1e-15);
    auto table = purity_table(haar_random_state(5, 3));
    double prev = 2.0;
    for (unsigned t = 1; t <= 20; t++) {
        double p0 = all_zeros_probability(table, t);
        ASSERT_NEAR(p0, exact_distribution(table, t).probs[0], 1e-12);
        ASSERT_LE(p0, prev);
        prev = p0;
    }
}
