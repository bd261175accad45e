// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "kahlerstat/oscillator.hpp"

namespace {

using namespace kahlerstat;
using oscillator::OscillatorSystem;

OscillatorSystem system_with(int n, double nu, double beta = 1.0) {
    OscillatorSystem s;
    s.n = n;
    s.nu = nu;
    s.beta = beta;
    return s;
}

TEST(Oscillator, Frequencies) {
    OscillatorSystem s;
    s.omega_c = 3.0;
    s.omega_0 = 4.0;
    EXPECT_DOUBLE_EQ(s.omega_t(), 5.0);
    EXPECT_DOUBLE_EQ(s.omega(), 2.0);
}

TEST(Oscillator, GroundEnergy) {
    const auto s = system_with(4, 0.5);
    EXPECT_DOUBLE_EQ(oscillator::ground_energy(s), 0.5 * 6.0 + 2.0);
}

TEST(Oscillator, QuantumPartitionIsAProduct) {
    const auto s = system_with(3, 0.0, 0.7);
    double want = std::exp(-0.7 * 1.5);
    for (int k = 1; k <= 3; ++k) want /= 1.0 - std::exp(-0.7 * k);
    EXPECT_NEAR(oscillator::quantum_partition(s) / want, 1.0, 1e-14);
}

TEST(Oscillator, RatioGapIsLinear) {
    // Z_q/Z_cl - 1 ~ b N(N+1)/4
    auto base = system_with(3, 0.5);
    const std::vector<double> hbars{1e-3, 5e-4};
    const auto t = oscillator::classical_limit_ratio(base, hbars);
    for (const auto& r : t.rows) EXPECT_NEAR(r.ratio_minus_one / r.b, 3.0, 0.01);
    EXPECT_NEAR(t.rows[0].hbar * t.rows[0].nu, 0.5, 1e-15);
    EXPECT_NEAR(t.order, 1.0, 1e-3);
}

TEST(Oscillator, MonteCarloIsDeterministic) {
    const auto s = system_with(2, 0.5);
    const auto a = oscillator::mc_partition_oracle(s, Statistics::anyon(0.5), 40000, 7);
    const auto b = oscillator::mc_partition_oracle(s, Statistics::anyon(0.5), 40000, 7);
    EXPECT_EQ(a.estimate, b.estimate);
    EXPECT_EQ(a.standard_error, b.standard_error);
    const auto c = oscillator::mc_partition_oracle(s, Statistics::anyon(0.5), 40000, 8);
    EXPECT_NE(a.estimate, c.estimate);
    EXPECT_EQ(a.batches, 4u);
}

TEST(Oscillator, MonteCarloSingleParticleIsExact) {
    const auto s = system_with(1, 0.0, 0.4);
    const auto e = oscillator::mc_partition_oracle(s, Statistics::boson(), 20000, 1);
    EXPECT_NEAR(e.estimate / oscillator::classical_partition(s), 1.0, 1e-12);
}

TEST(Oscillator, MonteCarloAgreesForPairs) {
    for (double nu : {0.0, 0.25, 1.0}) {
        const auto s = system_with(2, nu);
        const auto stats = nu == 0.0 ? Statistics::boson() : nu == 1.0 ? Statistics::fermion() : Statistics::anyon(nu);
        const auto e = oscillator::mc_partition_oracle(s, stats, 200000, 99);
        EXPECT_LT(std::abs(e.estimate - oscillator::classical_partition(s)), 4.0 * e.standard_error) << nu;
    }
}

TEST(Oscillator, MonteCarloValidation) {
    EXPECT_THROW(oscillator::mc_partition_oracle(system_with(3, 0.0), Statistics::boson(), 40000, 1), DomainError);
    EXPECT_THROW(oscillator::mc_partition_oracle(system_with(2, 0.0), Statistics::boson(), 15000, 1), DomainError);
    EXPECT_THROW(oscillator::mc_partition_oracle(system_with(2, 0.5), Statistics::boson(), 40000, 1), DomainError);
    EXPECT_THROW(oscillator::mc_partition_oracle(system_with(2, 0.5), Statistics::anyon(0.5), 20000, 1, 1e-9),
                 ConvergenceError);
}

TEST(Oscillator, SystemValidation) {
    auto s = system_with(2, 0.0);
    s.omega_0 = 0.0;
    EXPECT_THROW(oscillator::log_classical_partition(s), DomainError);
    s = system_with(0, 0.0);
    EXPECT_THROW(oscillator::log_quantum_partition(s), DomainError);
}

TEST(Oscillator, RegulatorMatchesSphereEntropy) {
    auto s = system_with(50, 0.5);
    s.omega_c = 1.0;
    s.omega_0 = 1e-3;
    const auto r = oscillator::regulator_entropy_check(s);
    EXPECT_LT(r.relative_gap, 1e-2);
    EXPECT_NEAR(r.effective_area, std::exp(1.0) * s.h() / s.b(), 1e-9 * r.effective_area);
}

}  // namespace
