// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <complex>
#include <numeric>
#include <random>

#include <boost/multiprecision/cpp_complex.hpp>
#include <gtest/gtest.h>

#include "kahlerstat/linalg.hpp"

namespace {

using kahlerstat::ComplexMatrix;
using kahlerstat::DenseMatrix;
using C = std::complex<double>;

// Leibniz expansion; `signed_sum` selects determinant or permanent.
C leibniz(const ComplexMatrix& a, bool signed_sum) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    C total = 0.0;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
        C prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) prod *= a(i, p[i]);
        total += (signed_sum && inv % 2 ? -1.0 : 1.0) * prod;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = C(u(eng), u(eng));
    return m;
}

TEST(Linalg, DeterminantMatchesLeibniz) {
    std::mt19937_64 eng(1);
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto m = random_matrix(n, eng);
        const C want = leibniz(m, true);
        EXPECT_LT(std::abs(kahlerstat::determinant(m) - want), 1e-12 * std::max(1.0, std::abs(want))) << n;
    }
}

TEST(Linalg, PermanentMatchesLeibniz) {
    std::mt19937_64 eng(2);
    for (std::size_t n = 1; n <= 7; ++n) {
        const auto m = random_matrix(n, eng);
        const C want = leibniz(m, false);
        EXPECT_LT(std::abs(kahlerstat::ryser_permanent(m) - want), 1e-12 * std::max(1.0, std::abs(want))) << n;
    }
}

TEST(Linalg, PermanentOfOnesIsFactorial) {
    DenseMatrix<double> ones(8, 8, 1.0);
    EXPECT_DOUBLE_EQ(kahlerstat::ryser_permanent(ones), 40320.0);
    EXPECT_DOUBLE_EQ(kahlerstat::ryser_permanent(DenseMatrix<double>(0, 0)), 1.0);
}

TEST(Linalg, SingularDeterminantIsZero) {
    DenseMatrix<double> m(3, 3, 1.0);
    EXPECT_EQ(kahlerstat::determinant(m), 0.0);
}

TEST(Linalg, RowSwapFlipsSign) {
    DenseMatrix<double> m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    EXPECT_DOUBLE_EQ(kahlerstat::determinant(m), -1.0);
}

TEST(Linalg, MultiprecisionDeterminant) {
    using MP = boost::multiprecision::cpp_complex_50;
    DenseMatrix<MP> m(2, 2);
    m(0, 0) = MP(1, 2);
    m(0, 1) = MP(3, 0);
    m(1, 0) = MP(0, 1);
    m(1, 1) = MP(2, 0);
    // (1+2i)*2 - 3i = 2 + i
    const MP d = kahlerstat::determinant(m);
    EXPECT_NEAR(static_cast<double>(d.real()), 2.0, 1e-40);
    EXPECT_NEAR(static_cast<double>(d.imag()), 1.0, 1e-40);
}

TEST(Linalg, NonSquareRejected) {
    DenseMatrix<double> m(2, 3);
    EXPECT_THROW(kahlerstat::determinant(m), std::invalid_argument);
    EXPECT_THROW(kahlerstat::ryser_permanent(m), std::invalid_argument);
}

}  // namespace
