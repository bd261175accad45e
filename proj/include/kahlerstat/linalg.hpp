// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kahlerstat {

/// Row-major dense square-or-rectangular matrix. Small sizes only; this is
/// storage for N x N tensors with N the particle count.
template <typename T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = DenseMatrix<std::complex<double>>;

/// Determinant by LU factorisation with partial pivoting. Works for any
/// field type with abs() reachable through ADL or std.
template <typename T>
T determinant(DenseMatrix<T> a) {
    using std::abs;
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    T det = T(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        auto best = abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            auto m = abs(a(i, k));
            if (m > best) {
                best = m;
                pivot = i;
            }
        }
        if (best == 0) return T(0);
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const T factor = a(i, k) / a(k, k);
            if (factor == T(0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
        }
    }
    return det;
}

/// Permanent by Ryser's inclusion-exclusion formula, visiting column subsets
/// in Gray-code order so each step updates the row sums with one column.
/// O(2^n n) operations.
template <typename T>
T ryser_permanent(const DenseMatrix<T>& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("permanent of a non-square matrix");
    if (n == 0) return T(1);
    if (n > 62) throw std::length_error("permanent order too large for Gray-code enumeration");

    std::vector<T> row_sum(n, T(0));
    T total = T(0);
    std::uint64_t gray = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const int col = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit) {
            for (std::size_t i = 0; i < n; ++i) row_sum[i] += a(i, static_cast<std::size_t>(col));
        } else {
            for (std::size_t i = 0; i < n; ++i) row_sum[i] -= a(i, static_cast<std::size_t>(col));
        }
        T prod = row_sum[0];
        for (std::size_t i = 1; i < n; ++i) prod *= row_sum[i];
        // (-1)^(n - |S|)
        if (((n - static_cast<std::size_t>(std::popcount(gray))) & 1U) != 0U) {
            total -= prod;
        } else {
            total += prod;
        }
    }
    return total;
}

}  // namespace kahlerstat
