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

#pragma once

// Serialization.
//
//   StateVector  JSON  {"n": n, "amplitudes": [[re, im], ...]}
//                binary  2^n (re, im) pairs of IEEE-754 float64, little-endian,
//                        amplitude index order, no header
//   OutcomeDistribution  JSON {"n", "t", "probs"}; CSV "bitstring,probability"
//   CutReport, EstimatorStats  JSON
//   TwoLayerNetwork  JSON {"n", "m", "W1": row-major bits, "W2_scale", "b2"}
//   Group tables  JSON {"moduli": [...], "values": [[re, im], ...]}

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hcut/abelian.hpp"
#include "hcut/errors.hpp"
#include "hcut/heuristics.hpp"
#include "hcut/hcsim.hpp"
#include "hcut/state.hpp"

namespace hcut {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal; "inf", "-inf", "nan" for non-finite values.
inline std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// --- StateVector -----------------------------------------------------------

inline Json to_json(const StateVector &psi) {
    Json amps = Json::array();
    for (const auto &a : psi.amplitudes()) {
        amps.push_back(Json::array({a.real(), a.imag()}));
    }
    return Json{{"n", psi.qubits()}, {"amplitudes", std::move(amps)}};
}

inline StateVector state_from_json(const Json &j) {
    std::vector<Complex> amps;
    for (const auto &pair : j.at("amplitudes")) {
        if (!pair.is_array() || pair.size() != 2) {
            throw DomainError("amplitude entries must be [re, im] pairs");
        }
        amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    StateVector psi(std::move(amps));
    if (j.contains("n") && j.at("n").get<unsigned>() != psi.qubits()) {
        throw DimensionError("state JSON: n does not match amplitude count");
    }
    return psi;
}

namespace detail {

inline void put_le64(std::ostream &out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int i = 0; i < 8; i++) {
        bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    }
    out.write(bytes, 8);
}

inline bool get_le64(std::istream &in, double &v) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char *>(bytes), 8)) {
        return false;
    }
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; i++) {
        bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    }
    v = std::bit_cast<double>(bits);
    return true;
}

}  // namespace detail

inline void write_state_binary(std::ostream &out, const StateVector &psi) {
    for (const auto &a : psi.amplitudes()) {
        detail::put_le64(out, a.real());
        detail::put_le64(out, a.imag());
    }
}

inline StateVector read_state_binary(std::istream &in) {
    std::vector<Complex> amps;
    double re = 0.0, im = 0.0;
    while (detail::get_le64(in, re)) {
        if (!detail::get_le64(in, im)) {
            throw DimensionError("binary state: odd number of float64 values");
        }
        amps.emplace_back(re, im);
    }
    return StateVector(std::move(amps));
}

// --- OutcomeDistribution ---------------------------------------------------

inline Json to_json(const OutcomeDistribution &d) {
    return Json{{"n", d.n}, {"t", d.t}, {"probs", d.probs}};
}

inline OutcomeDistribution distribution_from_json(const Json &j) {
    OutcomeDistribution d{j.at("n").get<unsigned>(), j.at("t").get<unsigned>(), j.at("probs").get<std::vector<double>>()};
    if (d.probs.size() != (std::size_t{1} << d.n)) {
        throw DimensionError("distribution JSON: probs length does not match n");
    }
    return d;
}

inline std::string to_csv(const OutcomeDistribution &d) {
    std::string out = "bitstring,probability\n";
    for (std::uint64_t x = 0; x < d.probs.size(); x++) {
        out += Mask(d.n, x).str();
        out += ',';
        out += format_double(d.probs[x]);
        out += '\n';
    }
    return out;
}

// --- Heuristics ------------------------------------------------------------

inline Json to_json(const Partition &p) {
    Json blocks = Json::array();
    for (const auto &b : p) {
        Json qubits = Json::array();
        for (unsigned q = 0; q < b.size(); q++) {
            if (b.test(q)) {
                qubits.push_back(q);
            }
        }
        blocks.push_back(std::move(qubits));
    }
    return blocks;
}

inline Json to_json(const CutReport &r) {
    auto freq_list = [](const std::vector<PartitionFrequency> &fs) {
        Json arr = Json::array();
        for (const auto &f : fs) {
            arr.push_back(Json{
                {"partition", partition_string(f.partition)},
                {"blocks", to_json(f.partition)},
                {"fraction", f.fraction}});
        }
        return arr;
    };
    return Json{
        {"n", r.n},
        {"parameters", {{"t", r.t}, {"shots", r.shots}, {"runs", r.runs}, {"threshold", r.threshold}}},
        {"candidate_frequencies", freq_list(r.candidate_frequencies)},
        {"above_threshold", freq_list(r.above_threshold)},
        {"merged_partition", partition_string(r.merged_partition)},
        {"merged_blocks", to_json(r.merged_partition)},
        {"confident", r.confident}};
}

inline Json to_json(const EstimatorStats &s) {
    Json j{{"mean", s.mean}, {"variance", s.variance}};
    if (std::isinf(s.snr)) {
        j["snr"] = nullptr;
        j["snr_infinite"] = true;
    } else {
        j["snr"] = s.snr;
        j["snr_infinite"] = false;
    }
    j["m"] = s.m;
    j["t"] = s.t;
    return j;
}

inline Json to_json(const TwoLayerNetwork &net) {
    std::vector<int> flat;
    flat.reserve(net.m * net.n);
    for (const auto &row : net.w1) {
        for (auto b : row) {
            flat.push_back(b);
        }
    }
    return Json{{"n", net.n}, {"m", net.m}, {"W1", flat}, {"W2_scale", net.w2_scale}, {"b2", net.b2}};
}

inline TwoLayerNetwork network_from_json(const Json &j) {
    TwoLayerNetwork net;
    net.n = j.at("n").get<unsigned>();
    net.m = j.at("m").get<std::size_t>();
    const auto flat = j.at("W1").get<std::vector<int>>();
    if (flat.size() != net.n * net.m) {
        throw DimensionError("network JSON: W1 has " + std::to_string(flat.size()) + " entries, expected n*m");
    }
    net.w1.assign(net.m, std::vector<std::uint8_t>(net.n));
    for (std::size_t i = 0; i < net.m; i++) {
        for (unsigned k = 0; k < net.n; k++) {
            const int bit = flat[i * net.n + k];
            if (bit != 0 && bit != 1) {
                throw DomainError("network JSON: W1 entries must be 0 or 1");
            }
            net.w1[i][k] = static_cast<std::uint8_t>(bit);
        }
    }
    net.b1.assign(net.m, 0);
    net.w2_scale = j.at("W2_scale").get<double>();
    net.b2 = j.at("b2").get<double>();
    return net;
}

// --- Abelian groups --------------------------------------------------------

inline Json group_table_to_json(const AbelianGroup &group, const std::vector<std::complex<double>> &values) {
    Json vals = Json::array();
    for (const auto &v : values) {
        vals.push_back(Json::array({v.real(), v.imag()}));
    }
    return Json{{"moduli", group.moduli()}, {"values", std::move(vals)}};
}

inline Json group_table_to_json(const AbelianGroup &group, const std::vector<double> &values) {
    std::vector<std::complex<double>> c(values.begin(), values.end());
    return group_table_to_json(group, c);
}

struct GroupTable {
    AbelianGroup group;
    std::vector<std::complex<double>> values;
};

inline GroupTable group_table_from_json(const Json &j) {
    AbelianGroup group(j.at("moduli").get<std::vector<unsigned>>());
    std::vector<std::complex<double>> values;
    for (const auto &pair : j.at("values")) {
        values.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    if (values.size() != group.order()) {
        throw DimensionError("group table size does not match group order");
    }
    return GroupTable{std::move(group), std::move(values)};
}

}  // namespace hcut
