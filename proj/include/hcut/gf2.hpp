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

// GF(2) linear algebra on measurement matrices.
//
// Rows are n-bit samples packed into one 64-bit word each (same layout as
// Mask), so M s over GF(2) is a popcount-parity per row.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hcut/bits.hpp"
#include "hcut/errors.hpp"

namespace hcut {

inline constexpr unsigned kDefaultSyndromeCap = 20;

/// m x n binary matrix whose rows are circuit samples.
struct MeasurementMatrix {
    unsigned n = 1;
    std::vector<std::uint64_t> rows;

    MeasurementMatrix() = default;
    explicit MeasurementMatrix(unsigned n_qubits) : n(n_qubits) {
        if (n == 0 || n > kMaxQubits) {
            throw DimensionError("measurement matrix width must be in [1, 64]");
        }
    }

    static MeasurementMatrix from_masks(unsigned n_qubits, std::span<const Mask> samples) {
        MeasurementMatrix m(n_qubits);
        m.rows.reserve(samples.size());
        for (const auto &x : samples) {
            m.push_back(x);
        }
        return m;
    }

    void push_back(const Mask &row) {
        if (row.size() != n) {
            throw DimensionError("row length " + std::to_string(row.size()) + " != " + std::to_string(n));
        }
        rows.push_back(row.bits());
    }

    std::size_t row_count() const {
        return rows.size();
    }
    Mask row(std::size_t i) const {
        return Mask(n, rows.at(i));
    }
};

/// |M s|: Hamming weight of the syndrome M s over GF(2).
inline std::size_t syndrome_weight(const MeasurementMatrix &m, const Mask &s) {
    if (s.size() != m.n) {
        throw DimensionError("syndrome: mask length " + std::to_string(s.size()) + " != " + std::to_string(m.n));
    }
    std::size_t w = 0;
    for (auto row : m.rows) {
        w += static_cast<std::size_t>(parity(row & s.bits()));
    }
    return w;
}

namespace detail {

/// Reduced row echelon form in place; returns pivot bit positions in pivot order.
/// Pivots are searched column-major from qubit 0 (the most significant bit).
inline std::vector<unsigned> rref_gf2(std::vector<std::uint64_t> &rows, unsigned n) {
    std::vector<unsigned> pivots;
    std::size_t r = 0;
    for (unsigned q = 0; q < n && r < rows.size(); q++) {
        const std::uint64_t col = std::uint64_t{1} << qubit_bit(n, q);
        std::size_t p = r;
        while (p < rows.size() && !(rows[p] & col)) {
            p++;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[p]);
        for (std::size_t i = 0; i < rows.size(); i++) {
            if (i != r && (rows[i] & col)) {
                rows[i] ^= rows[r];
            }
        }
        pivots.push_back(q);
        r++;
    }
    rows.resize(r);
    return pivots;
}

}  // namespace detail

inline unsigned rank_gf2(const MeasurementMatrix &m) {
    auto rows = m.rows;
    return static_cast<unsigned>(detail::rref_gf2(rows, m.n).size());
}

/// Basis of {s : M s = 0}. An empty matrix yields the n unit vectors.
inline std::vector<Mask> nullspace_gf2(const MeasurementMatrix &m) {
    auto rows = m.rows;
    const auto pivots = detail::rref_gf2(rows, m.n);
    std::vector<bool> is_pivot(m.n, false);
    for (auto q : pivots) {
        is_pivot[q] = true;
    }
    std::vector<Mask> basis;
    for (unsigned free = 0; free < m.n; free++) {
        if (is_pivot[free]) {
            continue;
        }
        Mask v = Mask::single(m.n, free);
        // Row i reads: x_{pivot_i} + sum_{free f in row i} x_f = 0.
        for (std::size_t i = 0; i < rows.size(); i++) {
            if ((rows[i] >> qubit_bit(m.n, free)) & 1) {
                v = v.with(pivots[i]);
            }
        }
        basis.push_back(v);
    }
    return basis;
}

/// All 2^k members of the span of a basis, sorted. k is capped at 24.
inline std::vector<Mask> span_gf2(unsigned n, std::span<const Mask> basis) {
    if (basis.size() > 24) {
        throw CapacityError("span_gf2: basis too large to enumerate");
    }
    std::vector<Mask> out;
    out.reserve(std::size_t{1} << basis.size());
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << basis.size()); c++) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < basis.size(); i++) {
            if ((c >> i) & 1) {
                v ^= basis[i].bits();
            }
        }
        out.emplace_back(n, v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct SyndromeResult {
    Mask mask;
    std::size_t weight = 0;
};

/// Nontrivial s (s not in {0^n, 1^n}) minimizing |M s| by exhaustive search.
/// Ties go to the lexicographically smallest s. Walks the candidates in Gray
/// code order, updating a column-packed syndrome one column at a time.
inline SyndromeResult min_syndrome_weight(const MeasurementMatrix &m, unsigned cap = kDefaultSyndromeCap) {
    const unsigned n = m.n;
    if (n > cap) {
        throw CapacityError(
            "min_syndrome_weight: n = " + std::to_string(n) + " exceeds brute-force cap " + std::to_string(cap));
    }
    if (n < 2) {
        throw DomainError("min_syndrome_weight: no nontrivial masks for n < 2");
    }
    const std::size_t words = (m.rows.size() + 63) / 64;
    // columns[q] has bit i set iff M[i][q] = 1.
    std::vector<std::vector<std::uint64_t>> columns(n, std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < m.rows.size(); i++) {
        for (unsigned q = 0; q < n; q++) {
            if ((m.rows[i] >> qubit_bit(n, q)) & 1) {
                columns[q][i / 64] |= std::uint64_t{1} << (i % 64);
            }
        }
    }
    std::vector<std::uint64_t> syndrome(words, 0);
    const std::uint64_t ones = low_bits(n);
    std::uint64_t s = 0;
    bool found = false;
    std::uint64_t best_s = 0;
    std::size_t best_w = 0;
    for (std::uint64_t step = 1; step < (std::uint64_t{1} << n); step++) {
        // Gray code: flip packed bit b = ctz(step).
        const unsigned b = static_cast<unsigned>(std::countr_zero(step));
        s ^= std::uint64_t{1} << b;
        const auto &col = columns[n - 1 - b];
        std::size_t w = 0;
        for (std::size_t k = 0; k < words; k++) {
            syndrome[k] ^= col[k];
            w += static_cast<std::size_t>(std::popcount(syndrome[k]));
        }
        if (s == ones) {
            continue;
        }
        if (!found || w < best_w || (w == best_w && s < best_s)) {
            found = true;
            best_w = w;
            best_s = s;
        }
    }
    return SyndromeResult{Mask(n, best_s), best_w};
}

}  // namespace hcut
