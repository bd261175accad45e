// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "kahlerstat/fermion_reduction.hpp"
#include "kahlerstat/sphere.hpp"

namespace {

using namespace kahlerstat;
using sphere::Spin;

TEST(Sphere, SpinValidation) {
    EXPECT_EQ(Spin::from_j(2.5).twice_j(), 5);
    EXPECT_THROW(Spin::from_j(0.3), DomainError);
    EXPECT_THROW(Spin(0), DomainError);
    EXPECT_DOUBLE_EQ(Spin(4).area(Units{1.0}), 4.0 * two_pi);
    EXPECT_EQ(Spin(4).degeneracy(), 5);
}

TEST(Sphere, OverlapsAreNormalised) {
    const Spin spin(7);
    const Complex z(0.4, 1.8);
    EXPECT_NEAR(std::abs(sphere::su2_overlap(z, z, spin)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(sphere::su2_overlap_rescaled(z, z, spin)), 1.0, 1e-14);
    // antipodal points, w = -1/zbar, are orthogonal
    EXPECT_NEAR(std::abs(sphere::su2_overlap(Complex(0.5, 0.0), Complex(-2.0, 0.0), spin)), 0.0, 1e-14);
}

TEST(Sphere, SingleParticleNormalisation) {
    const Spin spin(5);
    const Complex z[1] = {{0.7, -0.3}};
    EXPECT_NEAR(sphere::sphere_norm_sq_inverse(z, spin, Statistics::boson()).value(),
                std::pow(1.0 + std::norm(z[0]), 5), 1e-12);
}

TEST(Sphere, TwoBodyNormalisation) {
    const Spin spin(3);
    const Complex z[2] = {{0.2, 0.1}, {-0.6, 0.4}};
    auto p = [&](int a, int b) { return std::pow(1.0 + std::conj(z[a]) * z[b], 3); };
    const double boson = (p(0, 0) * p(1, 1) + p(0, 1) * p(1, 0)).real();
    const double fermion = (p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0)).real();
    EXPECT_NEAR(sphere::sphere_norm_sq_inverse(z, spin, Statistics::boson()).value() / boson, 1.0, 1e-13);
    EXPECT_NEAR(sphere::sphere_norm_sq_inverse(z, spin, Statistics::fermion()).value() / fermion, 1.0, 1e-13);
}

TEST(Sphere, NormalisationLimits) {
    const Spin spin(2);
    std::vector<Complex> four{{0.1, 0}, {0.2, 0}, {0.3, 0}, {0.4, 0}};
    EXPECT_THROW(sphere::sphere_norm_sq_inverse(four, spin, Statistics::fermion()), DomainError);
    EXPECT_THROW(sphere::sphere_norm_sq_inverse(four, spin, Statistics::anyon(0.5)), DomainError);
    std::vector<Complex> many(21, Complex(0.1, 0.0));
    EXPECT_THROW(sphere::sphere_norm_sq_inverse(many, Spin(50), Statistics::boson()), ResourceError);
    // huge j: log form is fine, the plain value overflows
    const Complex far[1] = {{100.0, 0.0}};
    const auto big = sphere::sphere_norm_sq_inverse(far, Spin(400), Statistics::boson());
    EXPECT_NEAR(big.log_abs, 400.0 * std::log1p(1e4), 1e-9);
    EXPECT_THROW(big.value(), ResourceError);
}

TEST(Sphere, FermionReductionFilledLevelIsExact) {
    for (int tj : {2, 4, 6}) {
        const Spin spin(tj);
        const auto fit = sphere::fermion_reduction_exponent(spin, tj + 1);
        EXPECT_NEAR(fit.coefficient, 0.0, 1e-9);
        EXPECT_DOUBLE_EQ(sphere::fermion_reduction_expected(spin, tj + 1), 0.0);
    }
}

TEST(Sphere, FermionReductionSingleParticle) {
    const Spin spin(8);
    const auto fit = sphere::fermion_reduction_exponent(spin, 1);
    EXPECT_NEAR(fit.coefficient, 8.0, 1e-8);
}

TEST(Sphere, FermionReductionValidation) {
    const Spin spin(4);
    EXPECT_THROW(sphere::fermion_reduction_exponent(spin, 6), DomainError);
    const std::vector<Complex> wide{{0.0, 0.0}, {0.5, 0.0}};
    EXPECT_THROW(sphere::fermion_reduction_exponent(spin, 2, wide), DomainError);
    const std::vector<Complex> wrong_count{{0.0, 0.0}};
    EXPECT_THROW(sphere::fermion_reduction_exponent(spin, 2, wrong_count), DomainError);
}

TEST(Sphere, DefaultOffsetsAreCentredAndSmall) {
    const auto d = sphere::default_offsets(5);
    Complex mean{};
    for (const auto& x : d) {
        mean += x;
        EXPECT_LT(std::abs(x), 1e-2);
    }
    EXPECT_LT(std::abs(mean), 1e-17);
}

TEST(Sphere, VolumeLaw) {
    // (10 - 1*2)^3 / 3!
    EXPECT_DOUBLE_EQ(sphere::nparticle_volume(10.0, 3, 1.0, 1.0).value, 512.0 / 6.0);
    EXPECT_DOUBLE_EQ(sphere::nparticle_volume(10.0, 3, 0.0, 1.0).value, 1000.0 / 6.0);
    // exactly filled fermion level: 2j+1 particles in area 2j h
    const auto filled = sphere::nparticle_volume(6.0, 7, 1.0, 1.0);
    EXPECT_TRUE(filled.saturated);
    EXPECT_EQ(filled.value, 0.0);
    EXPECT_THROW(sphere::nparticle_volume(1.0, 0, 0.0, 1.0), DomainError);
}

TEST(Sphere, CoincidingBosonPotential) {
    const Spin spin(6);
    const Complex z(1.1, 0.2);
    EXPECT_NEAR(sphere::coinciding_boson_kahler(z, spin, 2), 2.0 * 6.0 * std::log1p(std::norm(z) / 6.0), 1e-14);
}

}  // namespace
