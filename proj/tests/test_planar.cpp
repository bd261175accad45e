// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "kahlerstat/geometry.hpp"
#include "kahlerstat/planar.hpp"

namespace {

using namespace kahlerstat;

TEST(Planar, CoherentStatesAreNormalised) {
    const Complex z(1.3, -0.2);
    EXPECT_NEAR(std::abs(planar::coherent_overlap(z, z)), 1.0, 1e-15);
    // |<z|w>|^2 = exp(-|z-w|^2)
    const Complex w(-0.4, 0.9);
    EXPECT_NEAR(std::norm(planar::coherent_overlap(z, w)), std::exp(-std::norm(z - w)), 1e-15);
}

TEST(Planar, TwoBodyPotentialMatchesTwoTermNormalisation) {
    // |N|^{-2} = e^{|z1|^2 + |z2|^2} +- e^{2 Re(zbar1 z2)}
    for (const auto& s : {Statistics::boson(), Statistics::fermion()}) {
        const double sign = s.is_boson() ? 1.0 : -1.0;
        for (const auto& [z1, z2] : {std::pair{Complex(0.3, 0.1), Complex(-0.5, 0.7)},
                                     std::pair{Complex(1.5, -1.0), Complex(1.2, -0.8)}}) {
            const double direct =
                std::log(std::exp(std::norm(z1) + std::norm(z2)) + sign * std::exp(2.0 * (std::conj(z1) * z2).real()));
            const Complex pts[2] = {z1, z2};
            EXPECT_NEAR(planar::log_norm_sq_inverse(pts, s), direct, 1e-12);
            EXPECT_NEAR(planar::two_body_kahler(0.5 * (z1 + z2), z1 - z2, s), direct, 1e-12);
        }
    }
}

TEST(Planar, NormalisationErrors) {
    std::vector<Complex> z(21, Complex(0.0, 0.0));
    EXPECT_THROW(planar::log_norm_sq_inverse(z, Statistics::boson()), ResourceError);
    const Complex two[2] = {{0.2, 0.2}, {0.2, 0.2}};
    EXPECT_THROW(planar::log_norm_sq_inverse(two, Statistics::anyon(0.5)), DomainError);
    EXPECT_EQ(planar::log_norm_sq_inverse(two, Statistics::fermion()), -std::numeric_limits<double>::infinity());
    EXPECT_THROW(planar::two_body_kahler(0.0, 0.0, Statistics::fermion()), DomainError);
}

TEST(Planar, SmallRCoefficients) {
    const Units u{2.0};
    EXPECT_DOUBLE_EQ(planar::small_r_metric_coefficient(Statistics::boson(), u), 2.0);
    EXPECT_DOUBLE_EQ(planar::small_r_metric_coefficient(Statistics::fermion(), u), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(planar::small_r_metric_coefficient(Statistics::anyon(0.5), u), 2.0 * 2.0 / (1.5 * 2.5));
    // 2 (f/i) / r^2 approaches the coefficient
    for (const auto& s : {Statistics::boson(), Statistics::fermion(), Statistics::anyon(0.3)}) {
        const double r = 1e-3;
        EXPECT_NEAR(2.0 * planar::two_body_symplectic(r, s, u).imag() / (r * r),
                    planar::small_r_metric_coefficient(s, u), 1e-6);
    }
}

TEST(Planar, LargeRLimitIsFlat) {
    for (const auto& s : {Statistics::boson(), Statistics::fermion(), Statistics::anyon(0.6)})
        EXPECT_NEAR(planar::two_body_symplectic(8.0, s).imag(), 0.5, 1e-12);
}

TEST(Planar, FermionGaugesShareTheForm) {
    for (double s : {0.01, 0.5, 4.0, 30.0}) {
        const auto raw = planar::relative_radial_potential(s, Statistics::fermion(), planar::FermionGauge::raw);
        const auto red = planar::relative_radial_potential(s, Statistics::fermion(), planar::FermionGauge::reduced);
        EXPECT_DOUBLE_EQ(raw.hessian, red.hessian);
        // the gauges differ by ln s, so the slopes differ by 1/s
        EXPECT_NEAR(raw.slope - red.slope, 1.0 / s, 1e-9 / s);
    }
}

TEST(Planar, AnalyticHessianMatchesFiniteDifferences) {
    for (const auto& s : {Statistics::boson(), Statistics::fermion(), Statistics::anyon(0.25)}) {
        const auto field = planar::two_body_field(s);
        const Complex z[2] = {{0.4, -0.2}, {0.9, 0.6}};
        const auto a = potential_hessian(field, PointView(z, 2), DerivativeMode::analytic);
        FiniteDifferenceOptions opt;
        opt.step = 1e-3;  // Richardson removes the h^2 term; a larger step keeps roundoff down
        const auto d = potential_hessian(field, PointView(z, 2), DerivativeMode::richardson, opt);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(a(i, j) - d(i, j)), 0.0, 1e-8);
    }
}

TEST(Planar, CentreOfMassIsChargeN) {
    const Complex zc(0.7, -0.3);
    EXPECT_DOUBLE_EQ(planar::cm_kahler_check(4, zc, Units{1.5}), 4 * 1.5 * std::norm(zc));
    // particle coordinates: shifting both particles changes K by 2|Z|^2 only
    const Complex a[2] = {{0.1, 0.0}, {-0.3, 0.2}};
    const Complex b[2] = {a[0] + zc, a[1] + zc};
    const Complex mid_a = 0.5 * (a[0] + a[1]), mid_b = 0.5 * (b[0] + b[1]);
    const double dk = planar::log_norm_sq_inverse(b, Statistics::boson()) -
                      planar::log_norm_sq_inverse(a, Statistics::boson());
    EXPECT_NEAR(dk, 2.0 * (std::norm(mid_b) - std::norm(mid_a)), 1e-12);
}

TEST(Planar, HarmonicMotionIsUniformRotation) {
    for (const auto& s : {Statistics::boson(), Statistics::fermion(), Statistics::anyon(0.5)}) {
        const auto eom = planar::two_body_eom_check(Complex(0.8, 0.3), s, 1.0, 2.0);
        EXPECT_LT(eom.max_deviation, 1e-6) << s.name();
    }
}

TEST(Planar, AnyonPotentialRejectsBadArguments) {
    EXPECT_THROW(planar::anyon_two_body_kahler(0.0, 0.5), DomainError);
    EXPECT_THROW(planar::anyon_two_body_kahler(1.0, 1.5), DomainError);
    EXPECT_THROW(Statistics::anyon(-0.1), DomainError);
}

}  // namespace
