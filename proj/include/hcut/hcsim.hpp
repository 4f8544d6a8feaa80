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

// Output distributions of the hidden cut circuit.
//
// With t copy pairs of |psi> the group register is measured with probability
//   p_t(x) = 2^-n sum_s P(s)^t (-1)^{x.s},
// where P is the subsystem purity table. exact_distribution evaluates this in
// O(n 2^n) from the table; simulate_circuit_direct runs the gates on the full
// n (2t + 1)-qubit register and is kept as the small-n reference.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hcut/bits.hpp"
#include "hcut/errors.hpp"
#include "hcut/rng.hpp"
#include "hcut/state.hpp"
#include "hcut/walsh.hpp"

namespace hcut {

inline constexpr double kSupportThreshold = 1e-9;
inline constexpr double kNegativeClampLimit = 1e-9;
inline constexpr double kRenormalizeDrift = 1e-12;
inline constexpr unsigned kDefaultDirectSimCap = 20;

struct OutcomeDistribution {
    unsigned n = 0;
    unsigned t = 1;
    std::vector<double> probs;

    double operator[](const Mask &x) const {
        if (x.size() != n) {
            throw DimensionError("distribution lookup: mask length mismatch");
        }
        return probs[x.bits()];
    }
};

struct SampleSet {
    unsigned n = 0;
    std::uint64_t seed = 0;
    std::vector<Mask> samples;

    std::size_t shots() const {
        return samples.size();
    }
};

namespace detail {

/// Clamps round-off negatives, rejects real ones, renormalizes on drift.
inline void finalize_probabilities(std::vector<double> &probs) {
    double total = 0.0;
    for (auto &p : probs) {
        if (p < -kNegativeClampLimit) {
            throw ConsistencyError("negative probability " + std::to_string(p) + " (invalid purity table?)");
        }
        if (p < 0.0) {
            p = 0.0;
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kRenormalizeDrift) {
        if (!(total > 0.0)) {
            throw ConsistencyError("distribution has zero total mass");
        }
        for (auto &p : probs) {
            p /= total;
        }
    }
}

inline void check_distribution(const OutcomeDistribution &d) {
    if (d.probs.size() != (std::size_t{1} << d.n)) {
        throw DimensionError("distribution length does not match n");
    }
    double total = 0.0;
    for (double p : d.probs) {
        if (!(p >= -1e-12) || !std::isfinite(p)) {
            throw DomainError("distribution has a negative or non-finite entry");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw DomainError("distribution does not sum to 1");
    }
}

inline void apply_hadamard(std::vector<Complex> &amps, unsigned total, unsigned qubit) {
    const std::uint64_t b = std::uint64_t{1} << qubit_bit(total, qubit);
    const double h = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < amps.size(); i++) {
        if (!(i & b)) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i | b];
            amps[i] = h * (a0 + a1);
            amps[i | b] = h * (a0 - a1);
        }
    }
}

/// Fredkin gate: swaps qubits a and b when `control` is 1.
inline void apply_cswap(std::vector<Complex> &amps, unsigned total, unsigned control, unsigned a, unsigned b) {
    const std::uint64_t cb = std::uint64_t{1} << qubit_bit(total, control);
    const std::uint64_t ab = std::uint64_t{1} << qubit_bit(total, a);
    const std::uint64_t bb = std::uint64_t{1} << qubit_bit(total, b);
    for (std::size_t i = 0; i < amps.size(); i++) {
        if ((i & cb) && (i & ab) && !(i & bb)) {
            std::swap(amps[i], amps[i ^ ab ^ bb]);
        }
    }
}

}  // namespace detail

/// p_t = inverse Walsh transform of P^t.
inline OutcomeDistribution exact_distribution(const PurityTable &purities, unsigned t) {
    if (t == 0) {
        throw DomainError("exact_distribution: t must be >= 1");
    }
    if (purities.values.size() != (std::size_t{1} << purities.n)) {
        throw DimensionError("purity table length does not match n");
    }
    OutcomeDistribution d{purities.n, t, inverse_walsh(purities.power(t))};
    detail::finalize_probabilities(d.probs);
    return d;
}

/// t-fold Z_2^n self-convolution of p1, by powering its Walsh spectrum.
inline OutcomeDistribution distribution_by_convolution(const OutcomeDistribution &p1, unsigned t) {
    if (t == 0) {
        throw DomainError("distribution_by_convolution: t must be >= 1");
    }
    detail::check_distribution(p1);
    if (t == 1) {
        return OutcomeDistribution{p1.n, p1.t, p1.probs};
    }
    auto spectrum = walsh_transform(p1.probs);
    for (auto &v : spectrum) {
        v = ipow(v, t);
    }
    OutcomeDistribution d{p1.n, p1.t * t, inverse_walsh(spectrum)};
    detail::finalize_probabilities(d.probs);
    return d;
}

/// Gate-level simulation of the t-pair hidden cut circuit.
///
/// Register layout: group qubits 0..n-1, then 2t copies of psi; copy c holds
/// qubits n + c n .. n + c n + n - 1 and pair j is copies (2j, 2j + 1). The
/// circuit is H^n on the group register, a Fredkin gate from group qubit i
/// onto qubit i of both copies of every pair, H^n again, and the marginal on
/// the group register.
inline OutcomeDistribution simulate_circuit_direct(
    const StateVector &state, unsigned t, unsigned cap = kDefaultDirectSimCap) {
    if (t == 0) {
        throw DomainError("simulate_circuit_direct: t must be >= 1");
    }
    const unsigned n = state.qubits();
    const unsigned total = n * (2 * t + 1);
    if (total > cap) {
        throw CapacityError(
            "simulate_circuit_direct: " + std::to_string(total) + " qubits exceeds cap " + std::to_string(cap));
    }
    // |0^n> (x) psi^{(x) 2t}: the group register is the most significant block.
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (unsigned c = 1; c < 2 * t; c++) {
        std::vector<Complex> next(amps.size() * state.dimension());
        for (std::size_t i = 0; i < amps.size(); i++) {
            for (std::size_t j = 0; j < state.dimension(); j++) {
                next[i * state.dimension() + j] = amps[i] * state[j];
            }
        }
        amps = std::move(next);
    }
    amps.resize(amps.size() << n, Complex{});  // group register in |0...0>

    for (unsigned q = 0; q < n; q++) {
        detail::apply_hadamard(amps, total, q);
    }
    for (unsigned j = 0; j < t; j++) {
        const unsigned first = n + (2 * j) * n;
        const unsigned second = n + (2 * j + 1) * n;
        for (unsigned q = 0; q < n; q++) {
            detail::apply_cswap(amps, total, q, first + q, second + q);
        }
    }
    for (unsigned q = 0; q < n; q++) {
        detail::apply_hadamard(amps, total, q);
    }

    OutcomeDistribution d{n, t, std::vector<double>(std::size_t{1} << n, 0.0)};
    const unsigned shift = total - n;
    for (std::size_t i = 0; i < amps.size(); i++) {
        d.probs[i >> shift] += std::norm(amps[i]);
    }
    return d;
}

/// Inverse-CDF sampler over a fixed distribution.
class CategoricalSampler {
   public:
    explicit CategoricalSampler(const OutcomeDistribution &dist) : n_(dist.n), cdf_(dist.probs.size()) {
        detail::check_distribution(dist);
        double acc = 0.0;
        for (std::size_t i = 0; i < cdf_.size(); i++) {
            acc += std::max(dist.probs[i], 0.0);
            cdf_[i] = acc;
        }
        total_ = acc;
        // Outcomes past the last nonzero entry are unreachable.
        last_ = cdf_.size() - 1;
        while (last_ > 0 && dist.probs[last_] <= 0.0) {
            last_--;
        }
    }

    std::uint64_t draw(Rng &rng) const {
        const double u = rng.uniform() * total_;
        const auto idx = static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
        return std::min(idx, last_);
    }

    unsigned qubits() const {
        return n_;
    }

   private:
    unsigned n_;
    std::vector<double> cdf_;
    double total_ = 0.0;
    std::size_t last_ = 0;
};

/// i.i.d. categorical draws; deterministic per seed.
inline SampleSet sample(const OutcomeDistribution &dist, std::size_t shots, std::uint64_t seed) {
    const CategoricalSampler sampler(dist);
    Rng rng(seed);
    SampleSet out{dist.n, seed, {}};
    out.samples.reserve(shots);
    for (std::size_t k = 0; k < shots; k++) {
        out.samples.emplace_back(dist.n, sampler.draw(rng));
    }
    return out;
}

/// Shots of the t-pair swap test on subsystem s: each outcome bit is 1 with
/// probability (1 - P^t) / 2. Returned as one-bit samples.
inline SampleSet swap_test_bernoulli(double purity_value, unsigned t, std::size_t shots, std::uint64_t seed) {
    if (!(purity_value >= 0.0 && purity_value <= 1.0)) {
        throw DomainError("swap_test_bernoulli: purity must lie in [0, 1]");
    }
    if (t == 0) {
        throw DomainError("swap_test_bernoulli: t must be >= 1");
    }
    const double mu = 0.5 * (1.0 - ipow(purity_value, t));
    Rng rng(seed);
    SampleSet out{1, seed, {}};
    out.samples.reserve(shots);
    for (std::size_t k = 0; k < shots; k++) {
        out.samples.emplace_back(1, rng.bernoulli(mu) ? 1 : 0);
    }
    return out;
}

/// p_t(0^n) = 2^-n sum_s P^t(s).
inline double all_zeros_probability(const PurityTable &purities, unsigned t) {
    if (t == 0) {
        throw DomainError("all_zeros_probability: t must be >= 1");
    }
    double acc = 0.0;
    for (double v : purities.values) {
        acc += ipow(v, t);
    }
    return acc / static_cast<double>(purities.values.size());
}

/// Outcomes with probability above `threshold`, in lexicographic order.
inline std::vector<Mask> support(const OutcomeDistribution &dist, double threshold = kSupportThreshold) {
    std::vector<Mask> out;
    for (std::uint64_t x = 0; x < dist.probs.size(); x++) {
        if (dist.probs[x] > threshold) {
            out.emplace_back(dist.n, x);
        }
    }
    return out;
}

/// Shannon entropy in bits.
inline double entropy_bits(const OutcomeDistribution &dist) {
    double h = 0.0;
    for (double p : dist.probs) {
        if (p > 0.0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

}  // namespace hcut
