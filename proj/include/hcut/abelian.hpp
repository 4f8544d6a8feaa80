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

// State hidden subgroup circuits over finite abelian groups
// G = Z_{N_1} x ... x Z_{N_m}.
//
// The outcome law depends on the state only through the overlap function
// g -> <Psi|U(g)|Psi>:
//   p_t(k) = |G|^-1 sum_g prod_i exp(-2 pi i k_i g_i / N_i) <Psi|U(g)|Psi>^t
// and p_t is the t-fold group convolution of p_1.
//
// Elements are stored by mixed-radix index with the first modulus most
// significant; for moduli (2, ..., 2) this is the packed Mask layout.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hcut/errors.hpp"
#include "hcut/rng.hpp"

namespace hcut {

inline constexpr std::size_t kDefaultGroupOrderCap = 4096;

struct GroupElement {
    std::vector<unsigned> coords;
    bool operator==(const GroupElement &) const = default;
};

class AbelianGroup {
   public:
    explicit AbelianGroup(std::vector<unsigned> moduli, std::size_t cap = kDefaultGroupOrderCap)
        : moduli_(std::move(moduli)) {
        if (moduli_.empty()) {
            throw DomainError("abelian group needs at least one factor");
        }
        order_ = 1;
        for (auto m : moduli_) {
            if (m < 2) {
                throw DomainError("every modulus must be >= 2");
            }
            order_ *= m;
            if (order_ > cap) {
                throw CapacityError("group order exceeds cap " + std::to_string(cap));
            }
        }
    }

    static AbelianGroup binary(unsigned n) {
        return AbelianGroup(std::vector<unsigned>(n, 2));
    }

    const std::vector<unsigned> &moduli() const {
        return moduli_;
    }
    std::size_t order() const {
        return order_;
    }

    void check(const GroupElement &g) const {
        if (g.coords.size() != moduli_.size()) {
            throw DomainError("group element has the wrong number of coordinates");
        }
        for (std::size_t i = 0; i < moduli_.size(); i++) {
            if (g.coords[i] >= moduli_[i]) {
                throw DomainError(
                    "coordinate " + std::to_string(g.coords[i]) + " out of range for Z_" + std::to_string(moduli_[i]));
            }
        }
    }

    std::size_t index(const GroupElement &g) const {
        check(g);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < moduli_.size(); i++) {
            idx = idx * moduli_[i] + g.coords[i];
        }
        return idx;
    }

    GroupElement element(std::size_t index) const {
        if (index >= order_) {
            throw DomainError("group index out of range");
        }
        GroupElement g{std::vector<unsigned>(moduli_.size())};
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            g.coords[i] = static_cast<unsigned>(index % moduli_[i]);
            index /= moduli_[i];
        }
        return g;
    }

    GroupElement identity() const {
        return GroupElement{std::vector<unsigned>(moduli_.size(), 0)};
    }

    GroupElement inverse(const GroupElement &g) const {
        check(g);
        GroupElement out = g;
        for (std::size_t i = 0; i < moduli_.size(); i++) {
            out.coords[i] = (moduli_[i] - g.coords[i]) % moduli_[i];
        }
        return out;
    }

    GroupElement compose(const GroupElement &a, const GroupElement &b) const {
        check(a);
        check(b);
        GroupElement out = a;
        for (std::size_t i = 0; i < moduli_.size(); i++) {
            out.coords[i] = (a.coords[i] + b.coords[i]) % moduli_[i];
        }
        return out;
    }

    /// Index of a * b^-1.
    std::size_t difference_index(std::size_t a, std::size_t b) const {
        std::size_t idx = 0, scale = 1;
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            const std::size_t m = moduli_[i];
            const std::size_t ai = a % m, bi = b % m;
            idx += ((ai + m - bi) % m) * scale;
            scale *= m;
            a /= m;
            b /= m;
        }
        return idx;
    }

    /// Pairing numerator j with sum_i k_i g_i / N_i = j / |G| (mod 1).
    std::size_t pairing(std::size_t k, std::size_t g) const {
        std::size_t acc = 0;
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            const std::size_t m = moduli_[i];
            acc = (acc + ((k % m) * (g % m) % m) * (order_ / m)) % order_;
            k /= m;
            g /= m;
        }
        return acc;
    }

   private:
    std::vector<unsigned> moduli_;
    std::size_t order_ = 1;
};

namespace detail {

/// exp(-2 pi i j / d), exact at quarter turns.
inline std::complex<double> unit_root(std::size_t j, std::size_t d) {
    j %= d;
    if (j == 0) {
        return {1.0, 0.0};
    }
    if (4 * j == d) {
        return {0.0, -1.0};
    }
    if (2 * j == d) {
        return {-1.0, 0.0};
    }
    if (4 * j == 3 * d) {
        return {0.0, 1.0};
    }
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d);
    return {std::cos(angle), std::sin(angle)};
}

inline std::complex<double> cpow(std::complex<double> base, unsigned exponent) {
    std::complex<double> r{1.0, 0.0};
    while (exponent > 0) {
        if (exponent & 1) {
            r *= base;
        }
        base *= base;
        exponent >>= 1;
    }
    return r;
}

}  // namespace detail

/// F_{kg} = |G|^-1/2 prod_i exp(-2 pi i k_i g_i / N_i).
inline std::complex<double> fourier_entry(const GroupElement &k, const GroupElement &g, const AbelianGroup &group) {
    const auto j = group.pairing(group.index(k), group.index(g));
    return detail::unit_root(j, group.order()) / std::sqrt(static_cast<double>(group.order()));
}

/// g -> <Psi|U(g)|Psi> tabulated over the group.
struct OverlapFunction {
    std::vector<std::complex<double>> values;
};

inline constexpr double kOverlapTolerance = 1e-10;
inline constexpr double kProbabilityTolerance = 1e-9;

inline void validate_overlap(const OverlapFunction &overlap, const AbelianGroup &group) {
    if (overlap.values.size() != group.order()) {
        throw DimensionError("overlap table size does not match group order");
    }
    if (std::abs(overlap.values[0] - std::complex<double>(1.0, 0.0)) > kOverlapTolerance) {
        throw DomainError("overlap at the identity must be 1");
    }
    for (std::size_t g = 0; g < group.order(); g++) {
        const auto v = overlap.values[g];
        if (std::abs(v) > 1.0 + kOverlapTolerance) {
            throw DomainError("overlap magnitude exceeds 1 at index " + std::to_string(g));
        }
        const auto inv = overlap.values[group.difference_index(0, g)];
        if (std::abs(inv - std::conj(v)) > kOverlapTolerance) {
            throw DomainError("overlap is not conjugate symmetric at index " + std::to_string(g));
        }
    }
}

/// p_t(k) from the overlap function. Negative or complex outcomes beyond
/// 1e-9 raise ConsistencyError.
inline std::vector<double> distribution_from_overlap(
    const OverlapFunction &overlap, unsigned t, const AbelianGroup &group) {
    if (t == 0) {
        throw DomainError("t must be >= 1");
    }
    validate_overlap(overlap, group);
    const std::size_t order = group.order();
    std::vector<std::complex<double>> roots(order);
    for (std::size_t j = 0; j < order; j++) {
        roots[j] = detail::unit_root(j, order);
    }
    std::vector<std::complex<double>> powered(order);
    for (std::size_t g = 0; g < order; g++) {
        powered[g] = detail::cpow(overlap.values[g], t);
    }
    std::vector<double> p(order);
    double total = 0.0;
    for (std::size_t k = 0; k < order; k++) {
        std::complex<double> acc{};
        for (std::size_t g = 0; g < order; g++) {
            acc += roots[group.pairing(k, g)] * powered[g];
        }
        acc /= static_cast<double>(order);
        if (std::abs(acc.imag()) > kProbabilityTolerance) {
            throw ConsistencyError("p_t has imaginary residue " + std::to_string(acc.imag()));
        }
        if (acc.real() < -kProbabilityTolerance) {
            throw ConsistencyError("p_t has negative entry " + std::to_string(acc.real()));
        }
        p[k] = std::max(acc.real(), 0.0);
        total += p[k];
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
        throw ConsistencyError("p_t does not sum to 1");
    }
    return p;
}

/// (f * h)(k) = sum_{k'} f(k') h(k k'^-1).
template <typename T>
std::vector<T> group_convolve(std::span<const T> f, std::span<const T> h, const AbelianGroup &group) {
    if (f.size() != group.order() || h.size() != group.order()) {
        throw DimensionError("group_convolve: table sizes must equal the group order");
    }
    std::vector<T> out(group.order(), T{});
    for (std::size_t k = 0; k < group.order(); k++) {
        T acc{};
        for (std::size_t kp = 0; kp < group.order(); kp++) {
            acc += f[kp] * h[group.difference_index(k, kp)];
        }
        out[k] = acc;
    }
    return out;
}

inline std::vector<double> group_convolve(
    const std::vector<double> &f, const std::vector<double> &h, const AbelianGroup &group) {
    return group_convolve<double>(std::span<const double>(f), std::span<const double>(h), group);
}

struct CharacterMixture {
    /// Mixture weights; also exactly p_1.
    std::vector<double> weights;
    OverlapFunction overlap;
};

/// Random physically realizable overlap: overlap(g) = sum_j w_j chi_j(g) with
/// chi_j(g) = exp(+2 pi i j.g / N) and w on the simplex, so F^-1[overlap] = w.
/// Each weight is zeroed with probability `sparsity` (the identity weight is kept).
inline CharacterMixture random_character_mixture(const AbelianGroup &group, std::uint64_t seed, double sparsity = 0.0) {
    Rng rng(seed);
    const std::size_t order = group.order();
    CharacterMixture out;
    out.weights.resize(order);
    double total = 0.0;
    for (std::size_t j = 0; j < order; j++) {
        const double w = rng.exponential();
        const bool drop = j != 0 && rng.uniform() < sparsity;
        out.weights[j] = drop ? 0.0 : w;
        total += out.weights[j];
    }
    for (auto &w : out.weights) {
        w /= total;
    }
    out.overlap.values.assign(order, {});
    for (std::size_t g = 0; g < order; g++) {
        std::complex<double> acc{};
        for (std::size_t j = 0; j < order; j++) {
            acc += out.weights[j] * std::conj(detail::unit_root(group.pairing(j, g), order));
        }
        out.overlap.values[g] = acc;
    }
    out.overlap.values[0] = {1.0, 0.0};
    return out;
}

}  // namespace hcut
