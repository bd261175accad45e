// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fermion_reduction.hpp
 * @brief Coefficient of ln(1 + zbar z/2j) in the fermion Kähler potential when
 *        all N fermions sit near one point.
 *
 * Near coincidence det[(1 + zbar_i z_j)^{2j}] factorises into the Vandermonde
 * |prod (delta_i - delta_j)|^2 times a smooth function of z. Removing the
 * Vandermonde leaves C + c ln(1 + zbar z / 2j); c is fitted by least squares.
 * The determinant is a difference of nearly equal numbers, so it is evaluated
 * in multiprecision sized to the expected cancellation.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "errors.hpp"
#include "linalg.hpp"
#include "sphere.hpp"
#include "statistics.hpp"

namespace kahlerstat::sphere {

struct ReductionOptions {
    /// Points z on the rescaled chart; empty selects a ray with
    /// zbar z / 2j spread over [0, 8].
    std::vector<Complex> grid;
    /// Maximum absolute fit residual tolerated before reporting failure.
    double residual_threshold = 1e-4;
};

struct ReductionFit {
    double coefficient = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    std::size_t points = 0;
    unsigned digits = 0;  // decimal digits used for the determinant
};

/// Offsets used when none are given: distinct, |delta| < 1e-2, centred on
/// zero so the cluster's centre sits exactly at z.
inline std::vector<Complex> default_offsets(int n) {
    std::vector<Complex> d;
    Complex mean{};
    for (int k = 0; k < n; ++k) {
        const double radius = 4e-3 * (1.0 + 0.05 * k);
        d.push_back(std::polar(radius, two_pi * k / std::max(1, n) + 0.3));
        mean += d.back();
    }
    mean /= static_cast<double>(std::max(1, n));
    for (auto& x : d) x -= mean;
    return d;
}

namespace detail {

template <unsigned Digits>
double log_abs_fermion_det(std::span<const Complex> w, int twice_j) {
    using Cx = boost::multiprecision::cpp_complex<Digits>;
    const std::size_t n = w.size();
    std::vector<Cx> pts;
    pts.reserve(n);
    for (const auto& c : w) pts.emplace_back(c.real(), c.imag());
    DenseMatrix<Cx> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Cx base = Cx(1) + conj(pts[i]) * pts[k];
            Cx power(1);
            Cx sq = base;
            for (int e = twice_j; e > 0; e >>= 1) {
                if (e & 1) power *= sq;
                sq *= sq;
            }
            m(i, k) = power;
        }
    const Cx det = determinant(m);
    const auto mag = abs(det);
    if (mag == 0) throw DomainError("fermion determinant vanished; offsets coincide");
    return static_cast<double>(log(mag));
}

inline unsigned required_digits(std::span<const Complex> w) {
    const std::size_t n = w.size();
    double min_dist = 1.0;
    double max_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        max_norm = std::max(max_norm, std::norm(w[i]));
        for (std::size_t k = i + 1; k < n; ++k) min_dist = std::min(min_dist, std::abs(w[i] - w[k]));
    }
    const double pairs = static_cast<double>(n * (n - 1));
    return static_cast<unsigned>(40.0 + pairs * (std::log10(1.0 / min_dist) + std::log10(1.0 + max_norm)));
}

inline double log_abs_fermion_det(std::span<const Complex> w, int twice_j, unsigned& digits_used) {
    const unsigned need = required_digits(w);
    if (need <= 60) {
        digits_used = 60;
        return log_abs_fermion_det<60>(w, twice_j);
    }
    if (need <= 120) {
        digits_used = 120;
        return log_abs_fermion_det<120>(w, twice_j);
    }
    if (need <= 250) {
        digits_used = 250;
        return log_abs_fermion_det<250>(w, twice_j);
    }
    if (need <= 500) {
        digits_used = 500;
        return log_abs_fermion_det<500>(w, twice_j);
    }
    if (need <= 1000) {
        digits_used = 1000;
        return log_abs_fermion_det<1000>(w, twice_j);
    }
    if (need <= 2000) {
        digits_used = 2000;
        return log_abs_fermion_det<2000>(w, twice_j);
    }
    throw ResourceError("fermion determinant needs " + std::to_string(need) + " digits (cap 2000)");
}

}  // namespace detail

/// Fits c in ln|N|^{-2}(z + delta) - ln|Vandermonde(delta)|^2 = C + c ln(1 + zbar z/2j).
/// Offsets and grid points live on the rescaled chart.
inline ReductionFit fermion_reduction_exponent(const Spin& spin, int n, std::span<const Complex> offsets = {},
                                               const ReductionOptions& opt = {}) {
    if (n < 1) throw DomainError("particle number must be at least 1");
    if (n > spin.degeneracy()) throw DomainError("more fermions than the 2j+1 available states");
    std::vector<Complex> delta(offsets.begin(), offsets.end());
    if (delta.empty()) delta = default_offsets(n);
    if (delta.size() != static_cast<std::size_t>(n)) throw DomainError("need one offset per particle");
    for (const auto& d : delta)
        if (std::abs(d) > 1e-2) throw DomainError("offsets must satisfy |delta| <= 1e-2");

    const double tj = spin.twice_j();
    const double scale = std::sqrt(tj);
    std::vector<Complex> grid = opt.grid;
    if (grid.empty())
        for (int k = 0; k <= 16; ++k) grid.push_back(std::polar(std::sqrt(tj * 0.5 * k), pi / 7.0));

    double log_vandermonde = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) log_vandermonde += 2.0 * std::log(std::abs(delta[a] - delta[b]));

    ReductionFit fit;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& z : grid) {
        std::vector<Complex> w(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) w[a] = (z + delta[a]) / scale;
        unsigned digits = 0;
        ys.push_back(detail::log_abs_fermion_det(w, spin.twice_j(), digits) - log_vandermonde);
        xs.push_back(std::log1p(std::norm(z) / tj));
        fit.digits = std::max(fit.digits, digits);
    }
    // ordinary least squares with intercept
    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = m * sxx - sx * sx;
    if (!(denom > 0.0)) throw DomainError("reduction grid must contain at least two distinct radii");
    fit.coefficient = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.coefficient * sx) / m;
    fit.points = xs.size();
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.max_residual = std::max(fit.max_residual, std::abs(ys[i] - fit.intercept - fit.coefficient * xs[i]));
    if (fit.max_residual > opt.residual_threshold)
        throw ConvergenceError("fermion reduction fit residual " + std::to_string(fit.max_residual) +
                                   " exceeds threshold",
                               {fit.coefficient, fit.max_residual});
    return fit;
}

/// Closed form 2jN(1 - (N-1)/2j) of the fitted coefficient.
inline double fermion_reduction_expected(const Spin& spin, int n) {
    const double tj = spin.twice_j();
    return tj * n * (1.0 - (n - 1) / tj);
}

}  // namespace kahlerstat::sphere
