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

#include "hcut/io.hpp"

#include <sstream>

#include "gtest/gtest.h"

using namespace hcut;

TEST(format_double, round_trip_and_non_finite) {
    ASSERT_EQ(format_double(0.75), "0.75");
    ASSERT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
    ASSERT_EQ(format_double(std::nan("")), "nan");
    double v = 0.1 + 0.2;
    ASSERT_EQ(std::stod(format_double(v)), v);
}

TEST(state_io, json_and_binary_round_trip) {
    auto psi = haar_random_state(3, 12);
    auto back = state_from_json(to_json(psi));
    ASSERT_EQ(std::vector<Complex>(back.amplitudes().begin(), back.amplitudes().end()),
              std::vector<Complex>(psi.amplitudes().begin(), psi.amplitudes().end()));

    std::stringstream buf;
    write_state_binary(buf, psi);
    ASSERT_EQ(buf.str().size(), 8u * 2 * 8);
    auto bin = read_state_binary(buf);
    ASSERT_EQ(bin.inner(psi), psi.inner(psi));
    ASSERT_EQ(std::vector<Complex>(bin.amplitudes().begin(), bin.amplitudes().end()),
              std::vector<Complex>(psi.amplitudes().begin(), psi.amplitudes().end()));
}

TEST(state_io, binary_is_little_endian) {
    std::stringstream buf;
    write_state_binary(buf, StateVector::basis(1, 0));
    auto bytes = buf.str();
    // 1.0 = 0x3FF0000000000000, low byte first.
    ASSERT_EQ(static_cast<unsigned char>(bytes[7]), 0x3F);
    ASSERT_EQ(static_cast<unsigned char>(bytes[6]), 0xF0);
    ASSERT_EQ(static_cast<unsigned char>(bytes[0]), 0x00);
}

TEST(distribution_io, json_and_csv) {
    OutcomeDistribution d{2, 1, {0.75, 0.0, 0.0, 0.25}};
    auto back = distribution_from_json(to_json(d));
    ASSERT_EQ(back.probs, d.probs);
    ASSERT_EQ(to_csv(d), "bitstring,probability\n00,0.75\n01,0\n10,0\n11,0.25\n");
    Json bad{{"n", 3}, {"t", 1}, {"probs", {1.0}}};
    ASSERT_THROW(distribution_from_json(bad), DimensionError);
}

TEST(heuristics_io, report_and_stats) {
    Partition a{Mask::from_string("1101"), Mask::from_string("0010")};
    auto r = aggregate_cuts(4, {{a, 0.5}});
    auto j = to_json(r);
    ASSERT_EQ(j["merged_partition"], "{0,1,3}{2}");
    ASSERT_EQ(j["merged_blocks"], Json::parse("[[0,1,3],[2]]"));
    ASSERT_EQ(j["confident"], true);

    auto inf = to_json(estimator_stats(1.0, 1, 10));
    ASSERT_TRUE(inf["snr"].is_null());
    ASSERT_EQ(inf["snr_infinite"], true);
}

TEST(heuristics_io, network_round_trip) {
    MeasurementMatrix m(3);
    m.push_back(Mask::from_string("110"));
    m.push_back(Mask::from_string("011"));
    auto net = export_two_layer_network(m);
    auto j = to_json(net);
    ASSERT_EQ(j["W1"], Json::parse("[1,1,0,0,1,1]"));
    ASSERT_EQ(j["W2_scale"], -1.0);
    auto back = network_from_json(j);
    for (std::uint64_t s = 0; s < 8; s++) {
        ASSERT_EQ(back.evaluate(Mask(3, s)), estimate_purity_t(m, Mask(3, s)));
    }
    j["W1"][0] = 2;
    ASSERT_THROW(network_from_json(j), DomainError);
}

TEST(abelian_io, group_table_round_trip) {
    AbelianGroup g({3, 2});
    auto mix = random_character_mixture(g, 1);
    auto back = group_table_from_json(group_table_to_json(g, mix.overlap.values));
    ASSERT_EQ(back.group.moduli(), g.moduli());
    ASSERT_EQ(back.values, mix.overlap.values);
    Json bad{{"moduli", {3, 2}}, {"values", {{1.0, 0.0}}}};
    ASSERT_THROW(group_table_from_json(bad), DimensionError);
}
