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

// Bitstrings over Z_2^n.
//
// A Mask of n bits marks a subset of qubits and doubles as an element of the
// group Z_2^n. Qubit q is the q-th character of the string rendering (qubit 0
// leftmost) and is stored in bit (n - 1 - q) of the packed word, so the packed
// integer equals the string read as a binary number. Table indices, amplitude
// indices and lexicographic string order all coincide with that integer.

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "hcut/errors.hpp"

namespace hcut {

inline constexpr unsigned kMaxQubits = 64;

/// Word with the low n bits set.
constexpr std::uint64_t low_bits(unsigned n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

/// Packed bit position of qubit q in an n-qubit word.
constexpr unsigned qubit_bit(unsigned n, unsigned q) {
    return n - 1 - q;
}

class Mask {
   public:
    Mask() = default;

    Mask(unsigned n, std::uint64_t bits) : n_(n), bits_(bits) {
        if (n == 0 || n > kMaxQubits) {
            throw DimensionError("mask length must be in [1, 64], got " + std::to_string(n));
        }
        if ((bits & ~low_bits(n)) != 0) {
            throw DimensionError("mask bits exceed length " + std::to_string(n));
        }
    }

    static Mask zeros(unsigned n) {
        return Mask(n, 0);
    }
    static Mask ones(unsigned n) {
        return Mask(n, low_bits(n));
    }
    static Mask single(unsigned n, unsigned qubit) {
        return Mask::zeros(n).with(qubit);
    }

    /// Parses a string of '0'/'1' characters, qubit 0 first.
    static Mask from_string(std::string_view text) {
        if (text.empty() || text.size() > kMaxQubits) {
            throw DimensionError("mask string must have 1..64 characters");
        }
        std::uint64_t bits = 0;
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw DomainError("mask string may only contain '0' and '1': " + std::string(text));
            }
            bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
        }
        return Mask(static_cast<unsigned>(text.size()), bits);
    }

    /// Builds a mask from a list of qubit indices.
    template <typename Range>
    static Mask from_qubits(unsigned n, const Range &qubits) {
        Mask m = Mask::zeros(n);
        for (auto q : qubits) {
            m = m.with(static_cast<unsigned>(q));
        }
        return m;
    }

    unsigned size() const {
        return n_;
    }
    std::uint64_t bits() const {
        return bits_;
    }

    bool test(unsigned qubit) const {
        check_qubit(qubit);
        return (bits_ >> qubit_bit(n_, qubit)) & 1;
    }

    Mask with(unsigned qubit, bool value = true) const {
        check_qubit(qubit);
        std::uint64_t b = std::uint64_t{1} << qubit_bit(n_, qubit);
        return Mask(n_, value ? (bits_ | b) : (bits_ & ~b));
    }

    unsigned weight() const {
        return static_cast<unsigned>(std::popcount(bits_));
    }
    bool is_zero() const {
        return bits_ == 0;
    }
    bool is_ones() const {
        return bits_ == low_bits(n_);
    }
    /// True for 0^n and 1^n, the masks every pure state is symmetric under.
    bool is_trivial() const {
        return is_zero() || is_ones();
    }

    Mask complement() const {
        return Mask(n_, ~bits_ & low_bits(n_));
    }

    std::string str() const {
        std::string out(n_, '0');
        for (unsigned q = 0; q < n_; q++) {
            if ((bits_ >> qubit_bit(n_, q)) & 1) {
                out[q] = '1';
            }
        }
        return out;
    }

    friend Mask operator^(const Mask &a, const Mask &b) {
        a.check_same(b);
        return Mask(a.n_, a.bits_ ^ b.bits_);
    }
    friend Mask operator&(const Mask &a, const Mask &b) {
        a.check_same(b);
        return Mask(a.n_, a.bits_ & b.bits_);
    }
    friend Mask operator|(const Mask &a, const Mask &b) {
        a.check_same(b);
        return Mask(a.n_, a.bits_ | b.bits_);
    }

    bool operator==(const Mask &) const = default;
    /// Lexicographic on the string rendering for equal lengths.
    std::strong_ordering operator<=>(const Mask &other) const {
        if (auto c = n_ <=> other.n_; c != 0) {
            return c;
        }
        return bits_ <=> other.bits_;
    }

   private:
    void check_qubit(unsigned qubit) const {
        if (qubit >= n_) {
            throw DimensionError(
                "qubit index " + std::to_string(qubit) + " out of range for " + std::to_string(n_) + " qubits");
        }
    }
    void check_same(const Mask &other) const {
        if (n_ != other.n_) {
            throw DimensionError(
                "mask length mismatch: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
        }
    }

    unsigned n_ = 1;
    std::uint64_t bits_ = 0;
};

/// Parity of the packed word.
constexpr int parity(std::uint64_t word) {
    return std::popcount(word) & 1;
}

/// (sum_i x_i s_i) mod 2.
inline int dot_mod2(const Mask &x, const Mask &s) {
    if (x.size() != s.size()) {
        throw DimensionError(
            "dot_mod2 length mismatch: " + std::to_string(x.size()) + " vs " + std::to_string(s.size()));
    }
    return parity(x.bits() & s.bits());
}

}  // namespace hcut
