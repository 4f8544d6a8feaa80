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

#include "hcut/gf2.hpp"

#include <algorithm>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace hcut;

namespace {

MeasurementMatrix from_strings(std::initializer_list<const char *> rows, unsigned n) {
    MeasurementMatrix m(n);
    for (auto r : rows) {
        m.push_back(Mask::from_string(r));
    }
    return m;
}

std::vector<std::uint64_t> span_bits(unsigned n, const std::vector<Mask> &basis) {
    std::vector<std::uint64_t> out;
    for (const auto &v : span_gf2(n, basis)) {
        out.push_back(v.bits());
    }
    return out;
}

}  // namespace

TEST(nullspace_gf2, empty_matrix_spans_everything) {
    MeasurementMatrix m(2);
    auto basis = nullspace_gf2(m);
    ASSERT_EQ(basis.size(), 2u);
    ASSERT_EQ(span_bits(2, basis), (std::vector<std::uint64_t>{0, 1, 2, 3}));
}

TEST(nullspace_gf2, two_block_constraints) {
    auto m = from_strings({"0011", "1100"}, 4);
    auto basis = nullspace_gf2(m);
    auto members = span_bits(4, basis);
    ASSERT_EQ(members, hcut_test::kernel_by_scan(m));
    ASSERT_EQ(members, (std::vector<std::uint64_t>{0b0000, 0b0011, 0b1100, 0b1111}));
}

TEST(nullspace_gf2, even_parity_rows_leave_only_trivial_masks) {
    MeasurementMatrix m(4);
    for (std::uint64_t x = 0; x < 16; x++) {
        if (parity(x) == 0) {
            m.push_back(Mask(4, x));
        }
    }
    ASSERT_EQ(span_bits(4, nullspace_gf2(m)), (std::vector<std::uint64_t>{0b0000, 0b1111}));
}

TEST(nullspace_gf2, random_matrices_match_scan) {
    Rng rng(11);
    for (int trial = 0; trial < 300; trial++) {
        unsigned n = 1 + static_cast<unsigned>(rng.below(12));
        std::size_t rows = rng.below(2 * n + 1);
        MeasurementMatrix m(n);
        for (std::size_t i = 0; i < rows; i++) {
            // Bias toward low-rank matrices so nontrivial kernels are common.
            std::uint64_t r = rng.next_u64() & rng.next_u64() & low_bits(n);
            m.push_back(Mask(n, r));
        }
        auto basis = nullspace_gf2(m);
        for (const auto &b : basis) {
            ASSERT_EQ(syndrome_weight(m, b), 0u);
        }
        ASSERT_EQ(basis.size(), n - rank_gf2(m));
        ASSERT_EQ(span_bits(n, basis), hcut_test::kernel_by_scan(m));
    }
}

TEST(syndrome_weight, counts_odd_overlaps) {
    auto m = from_strings({"1100", "1010", "0110", "0001"}, 4);
    ASSERT_EQ(syndrome_weight(m, Mask::from_string("1000")), 2u);
    ASSERT_EQ(syndrome_weight(m, Mask::from_string("0000")), 0u);
    ASSERT_THROW(syndrome_weight(m, Mask::from_string("100")), DimensionError);
}

TEST(min_syndrome_weight, kernel_member_has_zero_weight) {
    auto m = from_strings({"0011", "1100"}, 4);
    auto r = min_syndrome_weight(m);
    ASSERT_EQ(r.weight, 0u);
    ASSERT_EQ(syndrome_weight(m, r.mask), 0u);
    ASSERT_FALSE(r.mask.is_trivial());
    ASSERT_EQ(r.mask.str(), "0011");
}

TEST(min_syndrome_weight, all_ones_row_tie_break) {
    auto m = from_strings({"1111"}, 4);
    auto r = min_syndrome_weight(m);
    ASSERT_EQ(r.weight, 0u);
    ASSERT_EQ(r.mask.str(), "0011");
}

TEST(min_syndrome_weight, matches_exhaustive_scan) {
    Rng rng(5);
    for (int trial = 0; trial < 100; trial++) {
        unsigned n = 2 + static_cast<unsigned>(rng.below(9));
        MeasurementMatrix m(n);
        std::size_t rows = 1 + rng.below(150);
        for (std::size_t i = 0; i < rows; i++) {
            m.push_back(Mask(n, rng.next_u64() & low_bits(n)));
        }
        std::size_t best = SIZE_MAX;
        std::uint64_t arg = 0;
        for (std::uint64_t s = 1; s + 1 < (std::uint64_t{1} << n); s++) {
            auto w = syndrome_weight(m, Mask(n, s));
            if (w < best) {
                best = w;
                arg = s;
            }
        }
        auto r = min_syndrome_weight(m);
        ASSERT_EQ(r.weight, best);
        ASSERT_EQ(r.mask.bits(), arg);
    }
}

TEST(min_syndrome_weight, capacity) {
    MeasurementMatrix m(21);
    ASSERT_THROW(min_syndrome_weight(m), CapacityError);
    ASSERT_NO_THROW(min_syndrome_weight(MeasurementMatrix(12)));
    ASSERT_THROW(min_syndrome_weight(MeasurementMatrix(1)), DomainError);
}
