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

// Fourier analysis over Z_2^n.
//
//   forward:  F[f](s)  = sum_x (-1)^{x.s} f(x)           (unnormalized)
//   inverse:  F^-1[g](x) = 2^-n sum_s (-1)^{x.s} g(s)
//   convolution: (f * g)(x) = sum_y f(y) g(x ^ y),  f * g = F^-1[F[f] F[g]]
//
// Tables are indexed by the packed mask integer (see bits.hpp).

#include <bit>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hcut/errors.hpp"

namespace hcut {

/// Number of qubits n for a table of length 2^n.
inline unsigned table_qubits(std::size_t length) {
    if (length < 2 || !std::has_single_bit(length)) {
        throw DimensionError("table length must be a power of two >= 2, got " + std::to_string(length));
    }
    return static_cast<unsigned>(std::countr_zero(length));
}

/// In-place unnormalized butterfly. O(n 2^n).
template <typename T>
void walsh_transform_inplace(std::span<T> values) {
    table_qubits(values.size());
    const std::size_t len = values.size();
    for (std::size_t h = 1; h < len; h *= 2) {
        for (std::size_t i = 0; i < len; i += 2 * h) {
            for (std::size_t j = i; j < i + h; j++) {
                T a = values[j];
                T b = values[j + h];
                values[j] = a + b;
                values[j + h] = a - b;
            }
        }
    }
}

template <typename T>
std::vector<T> walsh_transform(std::span<const T> f) {
    std::vector<T> out(f.begin(), f.end());
    walsh_transform_inplace<T>(out);
    return out;
}

template <typename T>
std::vector<T> inverse_walsh(std::span<const T> f_hat) {
    std::vector<T> out(f_hat.begin(), f_hat.end());
    walsh_transform_inplace<T>(out);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto &v : out) {
        v *= scale;
    }
    return out;
}

inline std::vector<double> walsh_transform(const std::vector<double> &f) {
    return walsh_transform<double>(std::span<const double>(f));
}
inline std::vector<double> inverse_walsh(const std::vector<double> &f_hat) {
    return inverse_walsh<double>(std::span<const double>(f_hat));
}

/// Group convolution by the defining double sum. O(4^n); the Walsh-domain
/// product is the fast route.
template <typename T>
std::vector<T> convolve(std::span<const T> f, std::span<const T> g) {
    if (f.size() != g.size()) {
        throw DimensionError(
            "convolve length mismatch: " + std::to_string(f.size()) + " vs " + std::to_string(g.size()));
    }
    table_qubits(f.size());
    std::vector<T> out(f.size(), T{});
    for (std::size_t x = 0; x < f.size(); x++) {
        T acc{};
        for (std::size_t y = 0; y < f.size(); y++) {
            acc += f[y] * g[x ^ y];
        }
        out[x] = acc;
    }
    return out;
}

inline std::vector<double> convolve(const std::vector<double> &f, const std::vector<double> &g) {
    return convolve<double>(std::span<const double>(f), std::span<const double>(g));
}

/// Elementwise integer power by repeated squaring.
inline double ipow(double base, unsigned exponent) {
    double result = 1.0;
    while (exponent > 0) {
        if (exponent & 1) {
            result *= base;
        }
        base *= base;
        exponent >>= 1;
    }
    return result;
}

}  // namespace hcut
