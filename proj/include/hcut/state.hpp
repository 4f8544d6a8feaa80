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

// Dense pure states and subsystem purities.
//
// Amplitude index i of an n-qubit state holds qubit q in bit (n - 1 - q), the
// same layout as Mask, so a mask's packed word selects amplitude-index bits
// directly. In a Kronecker product the first factor takes the lowest qubit
// indices (the most significant bits).

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hcut/bits.hpp"
#include "hcut/errors.hpp"
#include "hcut/rng.hpp"
#include "hcut/walsh.hpp"

namespace hcut {

using Complex = std::complex<double>;

inline constexpr unsigned kMaxStateQubits = 26;
inline constexpr unsigned kDefaultPurityTableCap = 12;
inline constexpr double kNormTolerance = 1e-10;

class StateVector {
   public:
    StateVector() = default;

    /// Takes amplitudes of length 2^n; throws unless the norm is 1 within 1e-10.
    explicit StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
        n_ = qubits_for(amps_.size());
        const double norm2 = norm_squared();
        if (std::abs(norm2 - 1.0) > kNormTolerance) {
            throw DomainError("state is not normalized: |psi|^2 = " + std::to_string(norm2));
        }
    }

    /// Normalizes arbitrary amplitudes; zero vectors are rejected.
    static StateVector normalized(std::vector<Complex> amplitudes) {
        double norm2 = 0.0;
        for (const auto &a : amplitudes) {
            norm2 += std::norm(a);
        }
        if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
            throw DegeneracyError("cannot normalize a zero or non-finite vector");
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto &a : amplitudes) {
            a *= inv;
        }
        return StateVector(std::move(amplitudes));
    }

    /// Computational basis state |index>.
    static StateVector basis(unsigned n, std::uint64_t index) {
        if (n == 0 || n > kMaxStateQubits) {
            throw DimensionError("qubit count must be in [1, 26]");
        }
        if (index >= (std::uint64_t{1} << n)) {
            throw DimensionError("basis index out of range");
        }
        std::vector<Complex> amps(std::size_t{1} << n, Complex{});
        amps[index] = 1.0;
        return StateVector(std::move(amps));
    }

    static StateVector basis(const Mask &bits) {
        return basis(bits.size(), bits.bits());
    }

    unsigned qubits() const {
        return n_;
    }
    std::size_t dimension() const {
        return amps_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amps_;
    }
    const Complex &operator[](std::size_t i) const {
        return amps_[i];
    }

    double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    /// <this|other>
    Complex inner(const StateVector &other) const {
        if (other.n_ != n_) {
            throw DimensionError("inner product of states with different qubit counts");
        }
        Complex s{};
        for (std::size_t i = 0; i < amps_.size(); i++) {
            s += std::conj(amps_[i]) * other.amps_[i];
        }
        return s;
    }

    static unsigned qubits_for(std::size_t length) {
        if (length < 2 || (length & (length - 1)) != 0) {
            throw DimensionError("amplitude count must be a power of two >= 2, got " + std::to_string(length));
        }
        unsigned n = 0;
        while ((std::size_t{1} << n) < length) {
            n++;
        }
        if (n > kMaxStateQubits) {
            throw CapacityError("state exceeds " + std::to_string(kMaxStateQubits) + " qubits");
        }
        return n;
    }

   private:
    unsigned n_ = 0;
    std::vector<Complex> amps_;
};

struct DensityMatrix {
    Eigen::MatrixXcd rho;
    Mask mask;
};

struct PurityTable {
    unsigned n = 0;
    std::vector<double> values;

    double operator[](const Mask &s) const {
        if (s.size() != n) {
            throw DimensionError("purity lookup: mask length mismatch");
        }
        return values[s.bits()];
    }

    /// Elementwise P^t.
    std::vector<double> power(unsigned t) const;
};

namespace detail {

/// Software pext: gathers the bits of `value` selected by `select`, keeping order.
inline std::uint64_t extract_bits(std::uint64_t value, std::uint64_t select) {
    std::uint64_t out = 0;
    unsigned k = 0;
    while (select) {
        const unsigned b = static_cast<unsigned>(std::countr_zero(select));
        out |= ((value >> b) & 1) << k++;
        select &= select - 1;
    }
    return out;
}

/// Reshapes psi into A[row][col] with rows indexed by the qubits in `mask`.
inline Eigen::MatrixXcd split_amplitudes(const StateVector &state, std::uint64_t mask) {
    const unsigned n = state.qubits();
    const unsigned k = static_cast<unsigned>(std::popcount(mask));
    const std::uint64_t rest = ~mask & low_bits(n);
    Eigen::MatrixXcd a(Eigen::Index{1} << k, Eigen::Index{1} << (n - k));
    for (std::size_t i = 0; i < state.dimension(); i++) {
        a(static_cast<Eigen::Index>(extract_bits(i, mask)), static_cast<Eigen::Index>(extract_bits(i, rest))) =
            state[i];
    }
    return a;
}

inline void check_mask(const StateVector &state, const Mask &mask) {
    if (mask.size() != state.qubits()) {
        throw DimensionError(
            "mask length " + std::to_string(mask.size()) + " != qubit count " + std::to_string(state.qubits()));
    }
}

}  // namespace detail

inline std::vector<double> PurityTable::power(unsigned t) const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); i++) {
        out[i] = ipow(values[i], t);
    }
    return out;
}

/// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
inline StateVector haar_random_state(unsigned n, std::uint64_t seed) {
    if (n == 0) {
        throw DimensionError("haar_random_state: n must be >= 1");
    }
    if (n > kMaxStateQubits) {
        throw CapacityError("haar_random_state: n exceeds " + std::to_string(kMaxStateQubits));
    }
    Rng rng(seed);
    std::vector<Complex> amps(std::size_t{1} << n);
    for (auto &a : amps) {
        const double re = rng.normal();
        const double im = rng.normal();
        a = Complex(re, im);
    }
    return StateVector::normalized(std::move(amps));
}

/// Kronecker product; parts[0] occupies the lowest qubit indices.
inline StateVector tensor_product(std::span<const StateVector> parts) {
    if (parts.empty()) {
        throw DimensionError("tensor_product of an empty list");
    }
    std::vector<Complex> acc(parts[0].amplitudes().begin(), parts[0].amplitudes().end());
    unsigned total = parts[0].qubits();
    for (std::size_t p = 1; p < parts.size(); p++) {
        total += parts[p].qubits();
        if (total > kMaxStateQubits) {
            throw CapacityError("tensor_product exceeds " + std::to_string(kMaxStateQubits) + " qubits");
        }
        const auto rhs = parts[p].amplitudes();
        std::vector<Complex> next(acc.size() * rhs.size());
        for (std::size_t i = 0; i < acc.size(); i++) {
            for (std::size_t j = 0; j < rhs.size(); j++) {
                next[i * rhs.size() + j] = acc[i] * rhs[j];
            }
        }
        acc = std::move(next);
    }
    return StateVector::normalized(std::move(acc));
}

inline StateVector tensor_product(std::initializer_list<StateVector> parts) {
    return tensor_product(std::span<const StateVector>(parts.begin(), parts.size()));
}

/// normalize(sqrt(1 - eps) a + sqrt(eps) b).
inline StateVector mix_states(const StateVector &a, const StateVector &b, double eps) {
    if (a.qubits() != b.qubits()) {
        throw DimensionError("mix_states: qubit counts differ");
    }
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw DomainError("mix_states: eps must lie in [0, 1]");
    }
    const double wa = std::sqrt(1.0 - eps);
    const double wb = std::sqrt(eps);
    std::vector<Complex> amps(a.dimension());
    for (std::size_t i = 0; i < amps.size(); i++) {
        amps[i] = wa * a[i] + wb * b[i];
    }
    return StateVector::normalized(std::move(amps));
}

/// |0><0| (x) I + |1><1| (x) Rx(phi) with Rx(phi) = exp(-i phi X / 2).
inline StateVector apply_controlled_rx(const StateVector &state, unsigned control, unsigned target, double phi) {
    const unsigned n = state.qubits();
    if (control >= n || target >= n || control == target) {
        throw DimensionError("controlled-Rx needs distinct qubit indices below " + std::to_string(n));
    }
    const std::uint64_t cb = std::uint64_t{1} << qubit_bit(n, control);
    const std::uint64_t tb = std::uint64_t{1} << qubit_bit(n, target);
    const double c = std::cos(phi / 2);
    const Complex ms(0.0, -std::sin(phi / 2));
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t i = 0; i < amps.size(); i++) {
        if ((i & cb) && !(i & tb)) {
            const Complex a0 = amps[i];
            const Complex a1 = amps[i | tb];
            amps[i] = c * a0 + ms * a1;
            amps[i | tb] = ms * a0 + c * a1;
        }
    }
    return StateVector::normalized(std::move(amps));
}

/// rho_s = Tr_{complement(s)} |psi><psi|, basis ordered by the kept qubits
/// (lowest qubit index most significant).
inline DensityMatrix reduced_density(const StateVector &state, const Mask &mask) {
    detail::check_mask(state, mask);
    if (mask.is_zero()) {
        return DensityMatrix{Eigen::MatrixXcd::Ones(1, 1), mask};
    }
    const auto a = detail::split_amplitudes(state, mask.bits());
    return DensityMatrix{a * a.adjoint(), mask};
}

/// Tr(rho_s^2), computed on whichever side of the cut is smaller.
inline double purity(const StateVector &state, const Mask &mask) {
    detail::check_mask(state, mask);
    if (mask.is_trivial()) {
        return 1.0;
    }
    const auto a = detail::split_amplitudes(state, mask.bits());
    if (a.rows() <= a.cols()) {
        return (a * a.adjoint()).squaredNorm();
    }
    return (a.adjoint() * a).squaredNorm();
}

/// P(s) for all 2^n masks.
inline PurityTable purity_table(const StateVector &state, unsigned cap = kDefaultPurityTableCap) {
    const unsigned n = state.qubits();
    if (n > cap) {
        throw CapacityError(
            "purity_table: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    }
    PurityTable table{n, std::vector<double>(std::size_t{1} << n)};
    for (std::uint64_t s = 0; s < table.values.size(); s++) {
        table.values[s] = purity(state, Mask(n, s));
    }
    table.values.front() = 1.0;
    table.values.back() = 1.0;
    return table;
}

/// SWAP_s on a 2n-qubit pair state: qubit i of copy one (qubit i) trades
/// places with qubit i of copy two (qubit n + i) wherever mask_i = 1.
inline StateVector apply_swap_mask(const StateVector &pair_state, const Mask &mask) {
    const unsigned total = pair_state.qubits();
    const unsigned n = mask.size();
    if (total != 2 * n) {
        throw DimensionError(
            "apply_swap_mask: pair state has " + std::to_string(total) + " qubits, mask expects " +
            std::to_string(2 * n));
    }
    // In the 2n-qubit word, copy one sits in the high n bits and copy two in the low n bits.
    const std::uint64_t sel = mask.bits();
    std::vector<Complex> out(pair_state.dimension());
    for (std::size_t i = 0; i < out.size(); i++) {
        const std::uint64_t hi = i >> n;
        const std::uint64_t lo = i & low_bits(n);
        const std::uint64_t diff = (hi ^ lo) & sel;
        const std::uint64_t j = ((hi ^ diff) << n) | (lo ^ diff);
        out[j] = pair_state[i];
    }
    return StateVector(std::move(out));
}

}  // namespace hcut
