// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <string>

#include <gtest/gtest.h>

#include "kahlerstat/geometry.hpp"
#include "kahlerstat/planar.hpp"
#include "kahlerstat/sphere.hpp"

namespace {

using namespace kahlerstat;

PointView one(const Complex& z) { return PointView(&z, 1); }

TEST(Geometry, GaussianFieldHasConstantForm) {
    const Units u{0.7};
    const auto field = planar::gaussian_field(u);
    const Complex z(0.3, -1.1);
    const auto f = symplectic_tensor(field, one(z));
    EXPECT_NEAR(f.f(0, 0).real(), 0.0, 1e-15);
    EXPECT_NEAR(f.f(0, 0).imag(), 0.7, 1e-15);
    EXPECT_NEAR(f.metric()(0, 0).real(), 0.7, 1e-15);
    const auto a = berry_connection(field, one(z));
    // A_z = (i/2) hbar zbar, A_zbar its conjugate
    EXPECT_NEAR(std::abs(a.holomorphic[0] - Complex(0.0, 0.35) * std::conj(z)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a.antiholomorphic[0] - std::conj(a.holomorphic[0])), 0.0, 0.0);
}

TEST(Geometry, GaussianDiskVolume) {
    const auto field = planar::gaussian_field();
    const auto region = Region2D::disk(1.5);
    const double want = 2.0 * pi * 1.5 * 1.5;  // 2 hbar * area
    EXPECT_NEAR(volume_area_integral(field, region).value, want, 1e-10);
    EXPECT_NEAR(volume_boundary_integral(field, region).value, want, 1e-10);
}

TEST(Geometry, FiniteDifferenceIsSecondOrder) {
    auto field = planar::relative_field(Statistics::boson());
    const Complex z(1.0, 0.5);
    const double exact = potential_hessian(field, one(z), DerivativeMode::analytic)(0, 0).real();
    auto error = [&](double step) {
        FiniteDifferenceOptions opt;
        opt.step = step;
        return std::abs(potential_hessian(field, one(z), DerivativeMode::finite_diff, opt)(0, 0).real() - exact);
    };
    const double ratio = error(0.02) / error(0.01);
    EXPECT_GE(ratio, 3.5);
    EXPECT_LE(ratio, 4.5);
}

TEST(Geometry, RichardsonBeatsPlainDifferences) {
    auto field = planar::relative_field(Statistics::anyon(0.5));
    const Complex z(0.8, 0.9);
    const double exact = potential_hessian(field, one(z), DerivativeMode::analytic)(0, 0).real();
    FiniteDifferenceOptions opt;
    opt.step = 0.02;
    const double plain = potential_hessian(field, one(z), DerivativeMode::finite_diff, opt)(0, 0).real();
    const double rich = potential_hessian(field, one(z), DerivativeMode::richardson, opt)(0, 0).real();
    EXPECT_LT(std::abs(rich - exact), 0.1 * std::abs(plain - exact));
}

TEST(Geometry, HermiticityDefectSmallForManyParticles) {
    const auto field = planar::n_particle_field(3, Statistics::boson());
    const Complex z[3] = {{0.1, 0.2}, {-0.4, 0.3}, {0.5, -0.6}};
    const auto f = symplectic_tensor(field, PointView(z, 3));
    EXPECT_LT(f.hermiticity_defect, 1e-6);
    // the metric is positive definite
    for (std::size_t i = 0; i < 3; ++i) EXPECT_GT(f.metric()(i, i).real(), 0.0);
}

TEST(Geometry, CoincidingFermionsNameThePair) {
    const auto field = planar::n_particle_field(3, Statistics::fermion());
    const Complex z[3] = {{0.1, 0.2}, {0.5, 0.5}, {0.1, 0.2}};
    try {
        symplectic_tensor(field, PointView(z, 3));
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("0 and 2"), std::string::npos) << e.what();
    }
}

TEST(Geometry, KahlerGaugeInvarianceOnAnnulus) {
    // K -> K + c ln(zbar z) changes A by a gradient; metric and annulus volume stay put
    const auto base = planar::relative_field(Statistics::anyon(0.5));
    for (double c : {0.3, -1.2}) {
        KahlerField shifted = base;
        shifted.gradient = nullptr;
        shifted.hessian = nullptr;
        shifted.potential = [base, c](PointView z) { return base.potential(z) + c * std::log(std::norm(z[0])); };
        const Complex z(1.1, -0.4);
        const double h0 = potential_hessian(base, one(z), DerivativeMode::analytic)(0, 0).real();
        const double h1 = potential_hessian(shifted, one(z), DerivativeMode::richardson)(0, 0).real();
        EXPECT_NEAR(h0, h1, 1e-7);
        const auto region = Region2D::annulus(0.5, 3.0);
        EXPECT_NEAR(volume_boundary_integral(shifted, region).value, volume_area_integral(base, region).value, 1e-6);
    }
}

TEST(Geometry, FullSphereVolume) {
    for (int tj : {1, 4, 9}) {
        const sphere::Spin spin(tj);
        for (int n : {1, 3}) {
            const auto field = sphere::coinciding_boson_field(spin, n);
            const auto region = Region2D::full_sphere(spin.j());
            const double want = n * spin.area();
            EXPECT_NEAR(volume_area_integral(field, region).value / want, 1.0, 1e-9);
            EXPECT_NEAR(volume_boundary_integral(field, region).value / want, 1.0, 1e-6);
        }
    }
}

TEST(Geometry, RegionValidation) {
    EXPECT_THROW(Region2D::disk(0.0), DomainError);
    EXPECT_THROW(Region2D::annulus(2.0, 1.0), DomainError);
    EXPECT_THROW(Region2D::disk(1.0, AngularRange::full, 8), DomainError);
    EXPECT_THROW(Region2D::full_sphere(0.0), DomainError);
}

TEST(Geometry, DimensionMismatchRejected) {
    const auto field = planar::two_body_field(Statistics::boson());
    const Complex z(0.1, 0.1);
    EXPECT_THROW(symplectic_tensor(field, one(z)), std::invalid_argument);
}

}  // namespace
