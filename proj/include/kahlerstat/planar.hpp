// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file planar.hpp
 * @brief Coherent states of identical particles in the plane.
 *
 * Two-body quantities use centre-of-mass and relative coordinates
 * Z = (z1 + z2)/2, z = z1 - z2, and the radial variable x = zbar z / 2.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "hypergeometric.hpp"
#include "linalg.hpp"
#include "statistics.hpp"

namespace kahlerstat::planar {

/// Largest particle number accepted by the permanent/determinant normalisation.
inline constexpr std::size_t max_particles = 20;

/// <z1|z2> for normalised oscillator coherent states.
inline Complex coherent_overlap(Complex z1, Complex z2) {
    return std::exp(-0.5 * (std::norm(z1) + std::norm(z2)) + std::conj(z1) * z2);
}

/// Matrix of single-particle overlaps <z_i|z_j>; the unnormalised matrix
/// e^{zbar_i z_j} equals D * this * D with D = diag(e^{|z_i|^2/2}).
inline ComplexMatrix overlap_matrix(std::span<const Complex> z) {
    ComplexMatrix m(z.size(), z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j) m(i, j) = coherent_overlap(z[i], z[j]);
    return m;
}

/// ln |N|^{-2} = ln sum_P eta_P prod_i e^{zbar_{P(i)} z_i}. Returns -inf when
/// the fermionic determinant vanishes.
inline double log_norm_sq_inverse(std::span<const Complex> z, const Statistics& s) {
    if (s.is_anyon()) throw DomainError("planar N-anyon normalisation has no closed form");
    if (z.size() > max_particles)
        throw ResourceError("normalisation capped at " + std::to_string(max_particles) + " particles, got " +
                            std::to_string(z.size()));
    double log_scale = 0.0;
    for (const auto& zi : z) log_scale += std::norm(zi);
    // the signed sum cancels strongly for nearby fermions: entries and
    // elimination run in extended precision
    using LC = std::complex<long double>;
    DenseMatrix<LC> m(z.size(), z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j) {
            const LC a(z[i]), b(z[j]);
            m(i, j) = std::exp(std::conj(a) * b - 0.5L * (std::norm(a) + std::norm(b)));
        }
    const long double reduced = (s.is_boson() ? ryser_permanent(m) : determinant(m)).real();
    if (reduced <= 0.0L) return -std::numeric_limits<double>::infinity();
    return log_scale + static_cast<double>(std::log(reduced));
}

/// |N|^{-2}: permanent (bosons) or determinant (fermions) of e^{zbar_i z_j}.
inline double norm_sq_inverse(std::span<const Complex> z, const Statistics& s) {
    return std::exp(log_norm_sq_inverse(z, s));
}

/// Gauge choice for the fermion pair. `raw` is ln(2 sinh x), singular at
/// coincidence; `reduced` divides |N|^{-2} by zbar z, which removes the
/// singularity without changing the symplectic form.
enum class FermionGauge { raw, reduced };

/// Radial part of a two-body potential as a function of s = zbar z:
/// K(s), dK/ds, and the mixed derivative H = d/ds(s dK/ds).
struct RadialPotential {
    double value = 0.0;
    double slope = 0.0;
    double hessian = 0.0;
};

namespace detail {

// coth x - x / sinh^2 x, with its Taylor series near zero
inline double fermion_bracket(double x) {
    if (x < 1e-2) {
        const double x2 = x * x;
        return x * (2.0 / 3.0 - x2 * (4.0 / 45.0 - x2 * (4.0 / 315.0)));
    }
    const double sh = std::sinh(x);
    return 1.0 / std::tanh(x) - x / (sh * sh);
}

// coth x - 1/x
inline double langevin_like(double x) {
    if (x < 1e-2) {
        const double x2 = x * x;
        return x * (1.0 / 3.0 - x2 * (1.0 / 45.0 - x2 * (2.0 / 945.0)));
    }
    return 1.0 / std::tanh(x) - 1.0 / x;
}

inline RadialPotential boson_radial(double s) {
    const double x = 0.5 * s;
    const double ch = std::cosh(x);
    // ln(2 cosh x) = x + ln(1 + e^{-2x})
    return {x + std::log1p(std::exp(-2.0 * x)), 0.5 * std::tanh(x), 0.5 * (std::tanh(x) + x / (ch * ch))};
}

inline RadialPotential fermion_radial(double s, FermionGauge gauge) {
    const double x = 0.5 * s;
    const double h = 0.5 * fermion_bracket(x);
    if (gauge == FermionGauge::raw) {
        if (x == 0.0) return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), h};
        return {x + std::log(-std::expm1(-2.0 * x)), 0.5 / std::tanh(x), h};
    }
    // ln(sinh x / x), finite at the origin
    const double value = x < 1e-4 ? x * x / 6.0 : x + std::log(-std::expm1(-2.0 * x)) - std::log(2.0 * x);
    return {value, 0.5 * langevin_like(x), h};
}

inline RadialPotential anyon_radial(double s, double nu) {
    const double x = 0.5 * s;
    const auto ser = anyon_radial_series(nu, x);
    const long double value = std::log(ser.s0) - std::log(static_cast<long double>(pi));
    if (x == 0.0) return {static_cast<double>(value), 0.0, 0.0};
    const long double lx = x;
    const long double d1 = ser.s1 / ser.s0;
    const long double d2 = ser.s2 / ser.s0;
    // K' = S'/(2S) = d1/(2x);  H = (d1 + d2 - d1^2)/(2x)
    return {static_cast<double>(value), static_cast<double>(d1 / (2.0L * lx)),
            static_cast<double>((d1 + d2 - d1 * d1) / (2.0L * lx))};
}

}  // namespace detail

/// Relative two-body potential (units of hbar) for any statistics; anyons use
/// the hypergeometric form with the nu ln(zbar z) gauge term removed.
inline RadialPotential relative_radial_potential(double s, const Statistics& stats,
                                                 FermionGauge gauge = FermionGauge::reduced) {
    switch (stats.kind()) {
    case Statistics::Kind::boson:
        return detail::boson_radial(s);
    case Statistics::Kind::fermion:
        return detail::fermion_radial(s, gauge);
    case Statistics::Kind::anyon:
        return detail::anyon_radial(s, stats.nu());
    }
    throw DomainError("unknown statistics");
}

/// K(Z, z) = hbar [2 Zbar Z + ln(e^{zbar z/2} +- e^{-zbar z/2})].
inline double two_body_kahler(Complex Z, Complex z, const Statistics& s, Units u = {}) {
    if (s.is_anyon()) throw DomainError("use anyon_two_body_kahler for anyons");
    if (s.is_fermion() && z == Complex(0.0, 0.0))
        throw DomainError("fermion Kähler potential is singular at z1 = z2 (particles 0 and 1)");
    const auto k = relative_radial_potential(std::norm(z), s, FermionGauge::raw);
    return u.hbar * (2.0 * std::norm(Z) + k.value);
}

/// f_{zbar z} of the relative coordinate: i hbar (d_zbar d_z K).
inline Complex two_body_symplectic(double r, const Statistics& s, Units u = {}) {
    if (!(r >= 0.0)) throw DomainError("radius must be non-negative");
    const auto k = relative_radial_potential(r * r, s);
    return Complex(0.0, u.hbar * k.hessian);
}

/// Coefficient c in ds^2 ~ c [rho^2 dtheta^2 + drho^2] near coincidence,
/// rho = r^2/2, theta = 2 phi.
inline double small_r_metric_coefficient(const Statistics& s, Units u = {}) {
    const double nu = s.nu();
    return u.hbar * 2.0 / ((1.0 + nu) * (2.0 + nu));
}

/// hbar ln[ 1F2(1; 1/2 + nu/2, 1 + nu/2; r^4/16) / (pi Gamma(1 + nu)) ].
inline double anyon_two_body_kahler(double r, double nu, Units u = {}) {
    if (!(r > 0.0)) throw DomainError("anyon Kähler potential needs r > 0");
    if (!(nu >= 0.0 && nu <= 1.0)) throw DomainError("nu must lie in [0, 1]");
    const double y = std::pow(r, 4) / 16.0;
    const long double f = hypergeometric_1f2(1.0, 0.5 + 0.5 * nu, 1.0 + 0.5 * nu, y);
    const long double k = std::log(f) - std::lgamma(1.0L + nu) - std::log(static_cast<long double>(pi));
    return u.hbar * static_cast<double>(k);
}

/// S_m(z) = z^{2m+nu} / sqrt(pi 2^{2m} Gamma(2m+1+nu)), principal branch.
inline Complex anyon_basis_amplitude(int m, Complex z, double nu) {
    if (m < 0) throw DomainError("basis index must be non-negative");
    const double p = 2.0 * m + nu;
    if (z == Complex(0.0, 0.0)) return p == 0.0 ? Complex(1.0 / std::sqrt(pi), 0.0) : Complex(0.0, 0.0);
    const double log_norm = 0.5 * (std::log(pi) + 2.0 * m * std::log(2.0) + std::lgamma(p + 1.0));
    return std::exp(p * std::log(z) - log_norm);
}

/// N hbar Zbar Z: the centre of mass behaves as one particle of charge N.
inline double cm_kahler_check(int n, Complex Z, Units u = {}) {
    return static_cast<double>(n) * u.hbar * std::norm(Z);
}

/// K = zbar z for a single particle.
inline KahlerField gaussian_field(Units u = {}) {
    KahlerField f;
    f.dimension = 1;
    f.hbar = u.hbar;
    f.name = "gaussian";
    f.potential = [](PointView z) { return std::norm(z[0]); };
    f.gradient = [](PointView z) { return std::vector<Complex>{std::conj(z[0])}; };
    f.hessian = [](PointView) { return ComplexMatrix(1, 1, Complex(1.0, 0.0)); };
    return f;
}

/// Relative-coordinate field of a pair, analytic derivatives included.
inline KahlerField relative_field(const Statistics& stats, Units u = {},
                                  FermionGauge gauge = FermionGauge::reduced) {
    KahlerField f;
    f.dimension = 1;
    f.hbar = u.hbar;
    f.name = stats.name() + "-pair";
    f.potential = [stats, gauge](PointView z) {
        return relative_radial_potential(std::norm(z[0]), stats, gauge).value;
    };
    f.gradient = [stats, gauge](PointView z) {
        const auto k = relative_radial_potential(std::norm(z[0]), stats, gauge);
        return std::vector<Complex>{std::conj(z[0]) * k.slope};
    };
    f.hessian = [stats, gauge](PointView z) {
        const auto k = relative_radial_potential(std::norm(z[0]), stats, gauge);
        return ComplexMatrix(1, 1, Complex(k.hessian, 0.0));
    };
    return f;
}

/// Pair field in (Z, z) coordinates: K = 2 Zbar Z + K_rel(zbar z).
inline KahlerField two_body_field(const Statistics& stats, Units u = {},
                                  FermionGauge gauge = FermionGauge::reduced) {
    KahlerField f;
    f.dimension = 2;
    f.hbar = u.hbar;
    f.name = stats.name() + "-pair-cm";
    f.potential = [stats, gauge](PointView z) {
        return 2.0 * std::norm(z[0]) + relative_radial_potential(std::norm(z[1]), stats, gauge).value;
    };
    f.gradient = [stats, gauge](PointView z) {
        const auto k = relative_radial_potential(std::norm(z[1]), stats, gauge);
        return std::vector<Complex>{2.0 * std::conj(z[0]), std::conj(z[1]) * k.slope};
    };
    f.hessian = [stats, gauge](PointView z) {
        const auto k = relative_radial_potential(std::norm(z[1]), stats, gauge);
        ComplexMatrix h(2, 2);
        h(0, 0) = 2.0;
        h(1, 1) = k.hessian;
        return h;
    };
    return f;
}

/// K = ln |N|^{-2} in particle coordinates; finite differences only.
inline KahlerField n_particle_field(std::size_t n, const Statistics& stats, Units u = {}) {
    KahlerField f;
    f.dimension = n;
    f.hbar = u.hbar;
    f.name = stats.name() + "-" + std::to_string(n);
    f.potential = [stats](PointView z) { return log_norm_sq_inverse(z, stats); };
    return f;
}

/// Outcome of integrating the pair's relative motion in a harmonic trap.
struct EomCheck {
    std::vector<double> times;
    std::vector<Complex> trajectory;
    std::size_t steps = 0;
    double max_deviation = 0.0;  // max_t |z(t) - z0 e^{-i omega t}|
};

/// Integrates f_{zbar z} zdot = d_zbar V for the relative coordinate with
/// V = hbar omega z d_z K, by RK4 with step doubling until two resolutions
/// agree to `tol`. The right-hand side uses the field's symplectic tensor and
/// a finite-difference gradient of V, so nothing assumes the answer.
inline EomCheck two_body_eom_check(Complex z0, const Statistics& s, double omega, double t_final, double tol = 1e-9,
                                   Units u = {}) {
    if (s.is_fermion() && z0 == Complex(0.0, 0.0)) throw DomainError("fermion pair cannot start at coincidence");
    const auto field = relative_field(s, u);
    auto energy = [&](Complex z) {
        const Complex pt[1] = {z};
        const auto a = berry_connection(field, PointView(pt, 1));
        // A_z = (i/2) hbar d_z K  =>  z d_z K = -2i z A_z / hbar
        return u.hbar * omega * (Complex(0.0, -2.0) * z * a.holomorphic[0] / u.hbar).real();
    };
    auto rhs = [&](Complex z) {
        if (omega == 0.0) return Complex(0.0, 0.0);
        const double h = 1e-5 * std::max(1.0, std::abs(z));
        const double dvdx = (energy(z + h) - energy(z - h)) / (2.0 * h);
        const double dvdy = (energy(z + Complex(0.0, h)) - energy(z - Complex(0.0, h))) / (2.0 * h);
        const Complex dv_dzbar = 0.5 * Complex(dvdx, dvdy);
        const Complex pt[1] = {z};
        const auto f = symplectic_tensor(field, PointView(pt, 1));
        if (std::abs(f.f(0, 0)) == 0.0) return Complex(0.0, 0.0);
        return dv_dzbar / f.f(0, 0);
    };
    auto integrate = [&](std::size_t steps) {
        EomCheck out;
        out.steps = steps;
        const double dt = t_final / static_cast<double>(steps);
        Complex z = z0;
        out.times.push_back(0.0);
        out.trajectory.push_back(z);
        for (std::size_t k = 0; k < steps; ++k) {
            const Complex k1 = rhs(z);
            const Complex k2 = rhs(z + 0.5 * dt * k1);
            const Complex k3 = rhs(z + 0.5 * dt * k2);
            const Complex k4 = rhs(z + dt * k3);
            z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            const double t = dt * static_cast<double>(k + 1);
            out.times.push_back(t);
            out.trajectory.push_back(z);
            const Complex exact = z0 * std::exp(Complex(0.0, -omega * t));
            out.max_deviation = std::max(out.max_deviation, std::abs(z - exact));
        }
        return out;
    };
    std::size_t steps = 64;
    auto coarse = integrate(steps);
    for (int level = 0; level < 12; ++level) {
        steps *= 2;
        auto fine = integrate(steps);
        if (std::abs(fine.trajectory.back() - coarse.trajectory.back()) < tol) return fine;
        coarse = std::move(fine);
    }
    throw ConvergenceError("two-body integrator failed to reach tolerance",
                           {std::abs(coarse.trajectory.back()), static_cast<double>(steps)});
}

}  // namespace kahlerstat::planar
