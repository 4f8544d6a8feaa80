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

// Postprocessing heuristics for approximate cuts.
//
// Early stopping: eliminate candidate masks s with x.s = 1 sample by sample
// (most frequent sample first) and stop just before only {0^n, 1^n} remain.
// The survivors suggest a partition; repeated runs are merged by common
// refinement of the partitions seen often enough.
//
// Estimator: m samples x_k from p_t give the unbiased estimate
//   P^t(s) ~= 1 - 2 |M s| / m
// for every s at once; m |M s| is Binomial(m, (1 - P^t(s)) / 2).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcut/bits.hpp"
#include "hcut/errors.hpp"
#include "hcut/gf2.hpp"
#include "hcut/hcsim.hpp"
#include "hcut/rng.hpp"
#include "hcut/state.hpp"
#include "hcut/walsh.hpp"

namespace hcut {

inline constexpr unsigned kDefaultCandidateCap = 20;
inline constexpr std::size_t kDefaultShotsPerRun = 64;
inline constexpr std::size_t kDefaultRuns = 50;
inline constexpr double kDefaultMergeThreshold = 0.1;

// ---------------------------------------------------------------------------
// Partitions

/// Disjoint blocks covering all qubits, each block a mask. Canonical order:
/// by lowest qubit index in the block.
using Partition = std::vector<Mask>;

inline unsigned first_qubit(const Mask &block) {
    return static_cast<unsigned>(std::countl_zero(block.bits())) - (64 - block.size());
}

inline void canonicalize(Partition &p) {
    std::sort(p.begin(), p.end(), [](const Mask &a, const Mask &b) {
        return first_qubit(a) < first_qubit(b);
    });
}

inline bool is_valid_partition(const Partition &p, unsigned n) {
    std::uint64_t seen = 0;
    for (const auto &b : p) {
        if (b.size() != n || b.is_zero() || (seen & b.bits())) {
            return false;
        }
        seen |= b.bits();
    }
    return seen == low_bits(n);
}

/// "{0,1,3}{2}"
inline std::string partition_string(const Partition &p) {
    std::string out;
    for (const auto &b : p) {
        out += '{';
        bool first = true;
        for (unsigned q = 0; q < b.size(); q++) {
            if (b.test(q)) {
                if (!first) {
                    out += ',';
                }
                out += std::to_string(q);
                first = false;
            }
        }
        out += '}';
    }
    return out;
}

/// Groups qubits by a per-qubit key; qubits with equal keys share a block.
template <typename KeyFn>
Partition partition_by_key(unsigned n, KeyFn key) {
    std::map<decltype(key(0u)), std::uint64_t> blocks;
    for (unsigned q = 0; q < n; q++) {
        blocks[key(q)] |= std::uint64_t{1} << qubit_bit(n, q);
    }
    Partition out;
    for (const auto &[k, bits] : blocks) {
        out.emplace_back(n, bits);
    }
    canonicalize(out);
    return out;
}

/// Blockwise intersection of partitions over the same qubits.
inline Partition common_refinement(const std::vector<Partition> &parts, unsigned n) {
    return partition_by_key(n, [&](unsigned q) {
        std::vector<std::size_t> key;
        key.reserve(parts.size());
        for (const auto &p : parts) {
            for (std::size_t b = 0; b < p.size(); b++) {
                if (p[b].test(q)) {
                    key.push_back(b);
                    break;
                }
            }
        }
        return key;
    });
}

// ---------------------------------------------------------------------------
// Early stopping

struct EarlyStopResult {
    /// Candidate set at the stopping point, sorted.
    std::vector<Mask> survivors;
    /// Unique samples applied before stopping.
    std::size_t processed = 0;
    /// False when nothing was eliminated (first informative sample collapsed the set, or only 0^n was seen).
    bool informative = false;
    /// True when unique samples ran out before the set became trivial.
    bool exhausted = false;
};

/// Unique outcomes ordered by descending count, ties lexicographic.
inline std::vector<std::pair<Mask, std::size_t>> unique_by_frequency(const SampleSet &samples) {
    std::map<std::uint64_t, std::size_t> counts;
    for (const auto &x : samples.samples) {
        counts[x.bits()]++;
    }
    std::vector<std::pair<Mask, std::size_t>> out;
    out.reserve(counts.size());
    for (const auto &[bits, c] : counts) {
        out.emplace_back(Mask(samples.n, bits), c);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        return a.second > b.second;
    });
    return out;
}

/// Steps 1-3 of the early-stopping heuristic on one batch of samples.
inline EarlyStopResult early_stopping_run(const SampleSet &samples, unsigned cap = kDefaultCandidateCap) {
    const unsigned n = samples.n;
    if (samples.samples.empty()) {
        throw DegeneracyError("early_stopping_run: empty sample set");
    }
    if (n > cap) {
        throw CapacityError(
            "early_stopping_run: n = " + std::to_string(n) + " exceeds candidate cap " + std::to_string(cap));
    }
    const std::uint64_t ones = low_bits(n);
    std::vector<std::uint64_t> current(std::size_t{1} << n);
    for (std::uint64_t s = 0; s < current.size(); s++) {
        current[s] = s;
    }
    const std::size_t full = current.size();

    EarlyStopResult result;
    result.exhausted = true;
    std::vector<std::uint64_t> next;
    for (const auto &[x, count] : unique_by_frequency(samples)) {
        next.clear();
        bool nontrivial = false;
        for (auto s : current) {
            if (parity(s & x.bits()) == 0) {
                next.push_back(s);
                nontrivial |= (s != 0 && s != ones);
            }
        }
        if (!nontrivial) {
            result.exhausted = false;
            break;
        }
        current.swap(next);
        result.processed++;
    }
    result.informative = current.size() < full;
    result.survivors.reserve(current.size());
    for (auto s : current) {
        result.survivors.emplace_back(n, s);
    }
    return result;
}

struct CutCandidate {
    /// Basis of the group generated by the input members.
    std::vector<Mask> nullspace_basis;
    Partition partition;
};

/// Step 4: qubits i and j share a block iff every member has equal bits at
/// i and j. Agreement on a basis implies agreement on its span, so the input
/// need not be closed under xor.
inline CutCandidate extract_cut(const std::vector<Mask> &members, unsigned n) {
    CutCandidate out;
    std::vector<std::uint64_t> rows;
    for (const auto &m : members) {
        if (m.size() != n) {
            throw DimensionError("extract_cut: member length mismatch");
        }
        rows.push_back(m.bits());
    }
    detail::rref_gf2(rows, n);
    for (auto r : rows) {
        out.nullspace_basis.emplace_back(n, r);
    }
    out.partition = partition_by_key(n, [&](unsigned q) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < rows.size(); i++) {
            key |= ((rows[i] >> qubit_bit(n, q)) & 1) << i;
        }
        return key;
    });
    return out;
}

inline CutCandidate extract_cut(const std::vector<Mask> &members) {
    if (members.empty()) {
        throw DimensionError("extract_cut: cannot infer n from an empty member list");
    }
    return extract_cut(members, members.front().size());
}

struct PartitionFrequency {
    Partition partition;
    double fraction = 0.0;
};

struct CutReport {
    unsigned n = 0;
    std::vector<PartitionFrequency> candidate_frequencies;
    /// Partitions above threshold, kept for hierarchy inspection.
    std::vector<PartitionFrequency> above_threshold;
    Partition merged_partition;
    bool confident = false;
    unsigned t = 0;
    std::size_t shots = 0;
    std::size_t runs = 0;
    double threshold = kDefaultMergeThreshold;
};

/// Step 6: common refinement of every partition seen in more than
/// `threshold` of the runs. With none above threshold the result is the
/// single-block partition and `confident` is false.
inline CutReport aggregate_cuts(
    unsigned n, std::vector<PartitionFrequency> candidates, double threshold = kDefaultMergeThreshold) {
    CutReport report;
    report.n = n;
    report.threshold = threshold;
    std::stable_sort(candidates.begin(), candidates.end(), [](const auto &a, const auto &b) {
        return a.fraction > b.fraction;
    });
    std::vector<Partition> selected;
    for (const auto &c : candidates) {
        if (!is_valid_partition(c.partition, n)) {
            throw DomainError("aggregate_cuts: invalid partition " + partition_string(c.partition));
        }
        if (c.fraction > threshold) {
            selected.push_back(c.partition);
            report.above_threshold.push_back(c);
        }
    }
    report.candidate_frequencies = std::move(candidates);
    report.confident = !selected.empty();
    report.merged_partition = report.confident ? common_refinement(selected, n) : Partition{Mask::ones(n)};
    return report;
}

struct HeuristicParams {
    std::size_t shots = kDefaultShotsPerRun;
    std::size_t runs = kDefaultRuns;
    double threshold = kDefaultMergeThreshold;
};

/// Steps 1-6: k runs of early stopping on fresh samples, then aggregation.
inline CutReport run_early_stopping_heuristic(
    const OutcomeDistribution &dist, const HeuristicParams &params, std::uint64_t seed) {
    if (params.runs == 0 || params.shots == 0) {
        throw DomainError("heuristic needs at least one run and one shot");
    }
    const CategoricalSampler sampler(dist);
    std::map<std::string, std::pair<Partition, std::size_t>> counts;
    for (std::size_t r = 0; r < params.runs; r++) {
        Rng rng(derive_seed(seed, r));
        SampleSet batch{dist.n, derive_seed(seed, r), {}};
        for (std::size_t k = 0; k < params.shots; k++) {
            batch.samples.emplace_back(dist.n, sampler.draw(rng));
        }
        auto cut = extract_cut(early_stopping_run(batch).survivors, dist.n);
        auto &slot = counts[partition_string(cut.partition)];
        slot.first = cut.partition;
        slot.second++;
    }
    std::vector<PartitionFrequency> freqs;
    for (const auto &[key, entry] : counts) {
        freqs.push_back({entry.first, static_cast<double>(entry.second) / static_cast<double>(params.runs)});
    }
    auto report = aggregate_cuts(dist.n, std::move(freqs), params.threshold);
    report.t = dist.t;
    report.shots = params.shots;
    report.runs = params.runs;
    return report;
}

// ---------------------------------------------------------------------------
// Planted cuts

/// Two Haar registers of floor(n/2) and ceil(n/2) qubits joined by a
/// controlled Rx(phi). Control and target default to qubits 0 and n - 1.
inline StateVector planted_cut_state(
    unsigned n, double phi, std::uint64_t seed, std::optional<unsigned> control = std::nullopt,
    std::optional<unsigned> target = std::nullopt) {
    if (n < 2) {
        throw DimensionError("planted_cut_state: n must be >= 2");
    }
    const unsigned left = n / 2;
    const auto a = haar_random_state(left, derive_seed(seed, 0));
    const auto b = haar_random_state(n - left, derive_seed(seed, 1));
    return apply_controlled_rx(tensor_product({a, b}), control.value_or(0), target.value_or(n - 1), phi);
}

/// Mask of the second register, e.g. 000111 for n = 6.
inline Mask planted_mask(unsigned n) {
    return Mask(n, low_bits(n - n / 2));
}

/// Repetitions needed to estimate 2^n probabilities to precision eps.
inline std::size_t precision_repetitions(unsigned n, double eps) {
    if (!(eps > 0.0)) {
        throw DomainError("precision must be positive");
    }
    return static_cast<std::size_t>(std::ceil(static_cast<double>(std::uint64_t{1} << n) / (eps * eps)));
}

struct CutProbability {
    double probability = 0.0;
    double standard_error = 0.0;
    std::size_t hits = 0;
    std::size_t repetitions = 0;
};

/// Fraction of independent step 1-3 runs whose survivor set contains `target`.
inline CutProbability find_cut_probability(
    const OutcomeDistribution &dist, const Mask &target, std::size_t shots, std::size_t repetitions,
    std::uint64_t seed) {
    if (repetitions == 0 || shots == 0) {
        throw DomainError("find_cut_probability: repetitions and shots must be positive");
    }
    if (target.size() != dist.n) {
        throw DimensionError("find_cut_probability: target length mismatch");
    }
    const CategoricalSampler sampler(dist);
    CutProbability out;
    out.repetitions = repetitions;
    SampleSet batch{dist.n, 0, {}};
    for (std::size_t r = 0; r < repetitions; r++) {
        Rng rng(derive_seed(seed, r));
        batch.samples.clear();
        for (std::size_t k = 0; k < shots; k++) {
            batch.samples.emplace_back(dist.n, sampler.draw(rng));
        }
        const auto res = early_stopping_run(batch);
        if (std::binary_search(res.survivors.begin(), res.survivors.end(), target)) {
            out.hits++;
        }
    }
    const double p = static_cast<double>(out.hits) / static_cast<double>(repetitions);
    out.probability = p;
    out.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(repetitions));
    return out;
}

struct PlantedCutQuery {
    unsigned n = 6;
    double phi = 0.1;
    unsigned t = 1;
    std::size_t shots = kDefaultShotsPerRun;
    std::size_t repetitions = 0;  // 0 selects precision_repetitions(n, 0.05)
    std::optional<unsigned> control;
    std::optional<unsigned> target;
};

/// Builds the planted state from `state_seed`, then measures how often the
/// planted mask survives steps 1-3.
inline CutProbability find_planted_cut_probability(
    const PlantedCutQuery &q, std::uint64_t state_seed, std::uint64_t sampling_seed) {
    if (q.n > kDefaultPurityTableCap) {
        throw CapacityError("find_planted_cut_probability: n exceeds 12");
    }
    const auto psi = planted_cut_state(q.n, q.phi, state_seed, q.control, q.target);
    const auto dist = exact_distribution(purity_table(psi), q.t);
    const std::size_t reps = q.repetitions ? q.repetitions : precision_repetitions(q.n, 0.05);
    return find_cut_probability(dist, planted_mask(q.n), q.shots, reps, sampling_seed);
}

// ---------------------------------------------------------------------------
// Estimator

/// 1 - 2 |M s| / m.
inline double estimate_purity_t(const MeasurementMatrix &m, const Mask &s) {
    if (m.rows.empty()) {
        throw DegeneracyError("estimate_purity_t: measurement matrix has no rows");
    }
    const double w = static_cast<double>(syndrome_weight(m, s));
    return 1.0 - (2.0 / static_cast<double>(m.rows.size())) * w;
}

struct EstimatorPmf {
    /// values[k] = 1 - 2k/m, k = 0..m
    std::vector<double> values;
    std::vector<double> probs;
};

namespace detail {

inline void check_estimator_args(double p_true, unsigned t, std::size_t m) {
    if (!(p_true >= 0.0 && p_true <= 1.0)) {
        throw DomainError("purity must lie in [0, 1]");
    }
    if (t == 0) {
        throw DomainError("t must be >= 1");
    }
    if (m == 0) {
        throw DomainError("m must be >= 1");
    }
}

}  // namespace detail

/// Exact law of the estimator: an affinely mapped Binomial(m, (1 - p^t)/2).
inline EstimatorPmf estimator_distribution(double p_true, unsigned t, std::size_t m) {
    detail::check_estimator_args(p_true, t, m);
    const double mu = 0.5 * (1.0 - ipow(p_true, t));
    EstimatorPmf out;
    out.values.resize(m + 1);
    out.probs.resize(m + 1);
    const double md = static_cast<double>(m);
    for (std::size_t k = 0; k <= m; k++) {
        const double kd = static_cast<double>(k);
        out.values[k] = 1.0 - 2.0 * kd / md;
        if (mu == 0.0) {
            out.probs[k] = k == 0 ? 1.0 : 0.0;
            continue;
        }
        const double log_p = std::lgamma(md + 1) - std::lgamma(kd + 1) - std::lgamma(md - kd + 1) +
                             kd * std::log(mu) + (md - kd) * std::log1p(-mu);
        out.probs[k] = std::exp(log_p);
    }
    return out;
}

struct EstimatorStats {
    double mean = 0.0;
    double variance = 0.0;
    double snr = 0.0;
    std::size_t m = 0;
    unsigned t = 0;
};

/// mean = p^t, variance = (1 - p^{2t}) / m, snr = mean / sqrt(variance).
inline EstimatorStats estimator_stats(double p_true, unsigned t, std::size_t m) {
    detail::check_estimator_args(p_true, t, m);
    EstimatorStats s;
    s.m = m;
    s.t = t;
    s.mean = ipow(p_true, t);
    s.variance = (1.0 - ipow(p_true, 2 * t)) / static_cast<double>(m);
    if (s.variance <= 0.0) {
        s.variance = 0.0;
        s.snr = std::numeric_limits<double>::infinity();
    } else {
        s.snr = s.mean / std::sqrt(s.variance);
    }
    return s;
}

/// `trials` draws of the estimator, each from m fresh hidden cut samples.
inline std::vector<double> sample_hidden_cut_estimates(
    const OutcomeDistribution &dist, const Mask &s, std::size_t m, std::size_t trials, std::uint64_t seed) {
    if (m == 0) {
        throw DegeneracyError("need at least one shot per estimate");
    }
    if (s.size() != dist.n) {
        throw DimensionError("estimate mask length mismatch");
    }
    const CategoricalSampler sampler(dist);
    Rng rng(seed);
    std::vector<double> out(trials);
    for (auto &v : out) {
        std::size_t w = 0;
        for (std::size_t k = 0; k < m; k++) {
            w += static_cast<std::size_t>(parity(sampler.draw(rng) & s.bits()));
        }
        v = 1.0 - (2.0 / static_cast<double>(m)) * static_cast<double>(w);
    }
    return out;
}

/// `trials` draws of the swap-test estimator 1 - 2 (mean of m outcome bits).
inline std::vector<double> sample_swap_test_estimates(
    double purity_value, unsigned t, std::size_t m, std::size_t trials, std::uint64_t seed) {
    if (m == 0) {
        throw DegeneracyError("need at least one shot per estimate");
    }
    std::vector<double> out(trials);
    for (std::size_t i = 0; i < trials; i++) {
        const auto bits = swap_test_bernoulli(purity_value, t, m, derive_seed(seed, i));
        std::size_t w = 0;
        for (const auto &b : bits.samples) {
            w += static_cast<std::size_t>(b.bits());
        }
        out[i] = 1.0 - (2.0 / static_cast<double>(m)) * static_cast<double>(w);
    }
    return out;
}

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw DegeneracyError("ks_statistic: empty sample");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) {
            i++;
        }
        while (j < b.size() && b[j] == v) {
            j++;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// Asymptotic two-sample critical value at level alpha.
inline double ks_critical_value(std::size_t na, std::size_t nb, double alpha) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c * std::sqrt(static_cast<double>(na + nb) / (static_cast<double>(na) * static_cast<double>(nb)));
}

// ---------------------------------------------------------------------------
// Two-layer network view of the estimator

/// out(s) = b2 + w2_scale * sum_i ((W1 s + b1)_i mod 2), with W1 = M,
/// b1 = 0, w2_scale = -2/m and b2 = 1.
struct TwoLayerNetwork {
    unsigned n = 0;
    std::size_t m = 0;
    std::vector<std::vector<std::uint8_t>> w1;
    std::vector<std::int64_t> b1;
    double w2_scale = 0.0;
    double b2 = 1.0;

    double evaluate(const Mask &s) const {
        if (s.size() != n) {
            throw DimensionError("network input length mismatch");
        }
        std::int64_t hidden_sum = 0;
        for (std::size_t i = 0; i < m; i++) {
            std::int64_t pre = b1[i];
            for (unsigned j = 0; j < n; j++) {
                pre += static_cast<std::int64_t>(w1[i][j]) * static_cast<std::int64_t>(s.test(j));
            }
            hidden_sum += pre % 2;
        }
        return b2 + w2_scale * static_cast<double>(hidden_sum);
    }
};

inline TwoLayerNetwork export_two_layer_network(const MeasurementMatrix &m) {
    if (m.rows.empty()) {
        throw DegeneracyError("export_two_layer_network: measurement matrix has no rows");
    }
    TwoLayerNetwork net;
    net.n = m.n;
    net.m = m.rows.size();
    net.w1.resize(net.m, std::vector<std::uint8_t>(m.n, 0));
    for (std::size_t i = 0; i < net.m; i++) {
        for (unsigned j = 0; j < m.n; j++) {
            net.w1[i][j] = static_cast<std::uint8_t>((m.rows[i] >> qubit_bit(m.n, j)) & 1);
        }
    }
    net.b1.assign(net.m, 0);
    net.w2_scale = -2.0 / static_cast<double>(net.m);
    net.b2 = 1.0;
    return net;
}

}  // namespace hcut
