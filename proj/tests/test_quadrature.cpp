// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "kahlerstat/errors.hpp"
#include "kahlerstat/hypergeometric.hpp"
#include "kahlerstat/planar.hpp"
#include "kahlerstat/quadrature.hpp"

namespace {

using namespace kahlerstat;

TEST(GaussLegendre, ExactForPolynomialsOfDegree2nMinus1) {
    for (std::size_t n : {2u, 5u, 12u}) {
        const auto rule = gauss_legendre(n);
        for (std::size_t d = 0; d < 2 * n; ++d) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], d);
            const double want = d % 2 ? 0.0 : 2.0 / (d + 1.0);
            EXPECT_NEAR(sum, want, 1e-14) << "n=" << n << " d=" << d;
        }
    }
}

TEST(AdaptiveIntegrate, Smooth) {
    const auto e = adaptive_integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
    EXPECT_NEAR(e.value, std::exp(1.0) - 1.0, 1e-13);
    const auto g = adaptive_integrate_2d([](double x, double y) { return std::sin(x) * y * y; }, 0.0, pi, 0.0, 2.0);
    EXPECT_NEAR(g.value, 2.0 * 8.0 / 3.0, 1e-11);
}

TEST(AdaptiveIntegrate, ReportsNonConvergence) {
    try {
        adaptive_integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-15, 0.0, 2, 3);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.partials().size(), 2u);
    }
}

TEST(Hypergeometric, ClosedForms) {
    // 1F2(1; 1/2, 1; x^2/4) = cosh x,  1F2(1; 1, 3/2; x^2/4) = sinh x / x
    for (double x : {0.0, 0.3, 2.0, 10.0, 40.0}) {
        const double y = 0.25 * x * x;
        EXPECT_NEAR(static_cast<double>(hypergeometric_1f2(1.0, 0.5, 1.0, y)) / std::cosh(x), 1.0, 1e-15);
        if (x > 0.0) {
            EXPECT_NEAR(static_cast<double>(hypergeometric_1f2(1.0, 1.0, 1.5, y)) / (std::sinh(x) / x), 1.0, 1e-15);
        }
    }
}

TEST(Hypergeometric, SeriesMomentsMatchTaylorDerivatives) {
    // s1 = x S', s2 = x^2 S'' against central differences of s0
    const double nu = 0.4, x = 1.7, h = 1e-4;
    const auto c = anyon_radial_series(nu, x);
    const auto p = anyon_radial_series(nu, x + h);
    const auto m = anyon_radial_series(nu, x - h);
    EXPECT_NEAR(static_cast<double>(c.s1), x * static_cast<double>(p.s0 - m.s0) / (2 * h), 1e-7);
    EXPECT_NEAR(static_cast<double>(c.s2), x * x * static_cast<double>(p.s0 - 2 * c.s0 + m.s0) / (h * h), 1e-5);
}

TEST(Hypergeometric, MatchesTwoHundredTermBasisSum) {
    // sum_m |S_m(z)|^2 = |z|^{2 nu} S(x) / pi, x = |z|^2/2
    for (double nu : {0.25, 0.5, 0.75}) {
        for (double r : {0.4, 1.5, 3.0}) {
            const Complex z = std::polar(r, 0.8);
            double direct = 0.0;
            for (int m = 0; m < 200; ++m) direct += std::norm(planar::anyon_basis_amplitude(m, z, nu));
            const double k = planar::anyon_two_body_kahler(r, nu) + nu * std::log(r * r);
            EXPECT_NEAR(k, std::log(direct), 1e-12) << nu << " " << r;
        }
    }
}

TEST(Hypergeometric, TermCapRaisesResourceError) {
    EXPECT_THROW(hypergeometric_1f2(1.0, 0.5, 1.0, 1e16), ResourceError);
}

}  // namespace
