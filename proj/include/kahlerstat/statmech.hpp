// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file statmech.hpp
 * @brief Classical statistical mechanics with excluded phase-space volume
 *        and its quantum counterpart, exclusion statistics.
 *
 * Classical side: N particles in a one-particle phase-space volume A with
 * alpha excluded per particle, V_N = (A - alpha (N-1))^N / N!.
 * Quantum side: G states, exclusion parameter g, W = C(G + (1-g)(N-1), N).
 * The two meet in the double limit h -> 0, g -> inf, g h^D -> alpha.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "sphere.hpp"
#include "statistics.hpp"

namespace kahlerstat::statmech {

/// N particles in one-particle phase-space volume `area` (units of h^D).
struct ThermoState {
    double n = 1.0;
    double area = 1.0;
    double alpha = 0.0;   // excluded volume per particle
    double beta = 1.0;    // inverse temperature
    double energy = 0.0;  // total energy E_N, the same for every state
    double h = two_pi;    // Planck constant (hbar = 1 by default)

    double density() const noexcept { return n / area; }
};

struct ThermoResult {
    double free_energy = 0.0;
    double entropy = 0.0;
    double beta_pressure = 0.0;
    double pressure = 0.0;
};

namespace detail {

inline void check_compressible(double alpha, double n, double area) {
    if (!(area > 0.0)) throw DomainError("phase-space volume must be positive");
    if (n < 0.0) throw DomainError("particle number must be non-negative");
    if (alpha < 0.0) throw DomainError("excluded volume alpha must be non-negative");
    // alpha N >= A  <=>  rho >= 1/alpha, compared without dividing
    if (alpha > 0.0 && alpha * n >= area)
        throw IncompressibleError("density " + std::to_string(n / area) + " reached the maximum 1/alpha = " +
                                  std::to_string(1.0 / alpha));
}

inline void check_density(double alpha, double rho) {
    if (rho < 0.0) throw DomainError("density must be non-negative");
    if (alpha > 0.0 && alpha * rho >= 1.0)
        throw IncompressibleError("density " + std::to_string(rho) + " reached the maximum 1/alpha = " +
                                  std::to_string(1.0 / alpha));
}

}  // namespace detail

/// Thermodynamic-limit forms: S = N ln(1 - alpha rho) + N ln(A/h) - N ln N + N,
/// beta P = rho / (1 - alpha rho), F = E - T S.
inline ThermoResult classical_thermo(const ThermoState& s) {
    detail::check_compressible(s.alpha, s.n, s.area);
    if (!(s.beta > 0.0)) throw DomainError("beta must be positive");
    const double rho = s.density();
    ThermoResult r;
    r.entropy = s.n == 0.0 ? 0.0
                           : s.n * std::log1p(-s.alpha * rho) + s.n * std::log(s.area / s.h) - s.n * std::log(s.n) + s.n;
    r.free_energy = s.energy - r.entropy / s.beta;
    r.beta_pressure = rho / (1.0 - s.alpha * rho);
    r.pressure = r.beta_pressure / s.beta;
    return r;
}

/// Exact forms for integer N: S = ln(V_N / h^N), beta P = N / (A - alpha (N-1)).
inline ThermoResult classical_thermo_exact(const ThermoState& s) {
    detail::check_compressible(s.alpha, s.n, s.area);
    if (!(s.beta > 0.0)) throw DomainError("beta must be positive");
    const double rounded = std::round(s.n);
    if (rounded != s.n || rounded < 1.0) throw DomainError("exact thermodynamics needs integer N >= 1");
    const int n = static_cast<int>(rounded);
    const auto v = sphere::nparticle_volume(s.area, n, s.alpha / s.h, s.h);
    if (v.saturated) throw IncompressibleError("phase-space volume is saturated");
    ThermoResult r;
    r.entropy = v.log_value - s.n * std::log(s.h);
    r.free_energy = s.energy - r.entropy / s.beta;
    r.beta_pressure = s.n / v.base;
    r.pressure = r.beta_pressure / s.beta;
    return r;
}

/// Number of N-particle states in G single-particle states with exclusion g,
/// kept as a logarithm.
struct ExclusionWeight {
    double log_value = 0.0;

    double value() const {
        if (log_value > std::log(std::numeric_limits<double>::max()))
            throw ResourceError("exclusion weight overflows double; use log_value");
        return std::exp(log_value);
    }
};

/// W = (G + (1-g)(N-1))! / (N! (G - gN - (1-g))!) through log-Gamma.
inline ExclusionWeight exclusion_weight(double big_g, double n, double g) {
    if (n < 0.0 || big_g < 0.0 || g < 0.0) throw DomainError("G, N and g must be non-negative");
    const double top = big_g + (1.0 - g) * (n - 1.0);
    const double bottom = big_g - g * n - (1.0 - g);
    if (top < 0.0 || bottom < 0.0)
        throw DomainError("over-exclusion: factorial argument below zero (G = " + std::to_string(big_g) +
                          ", N = " + std::to_string(n) + ", g = " + std::to_string(g) + ")");
    return {std::lgamma(top + 1.0) - std::lgamma(n + 1.0) - std::lgamma(bottom + 1.0)};
}

/// Exact W for rational g = g_num / g_den, as the binomial C(G + (1-g)(N-1), N).
/// Requires the top argument to be an integer.
inline boost::multiprecision::cpp_int exclusion_weight_exact(long big_g, long n, long g_num, long g_den = 1) {
    if (g_den <= 0 || g_num < 0 || big_g < 0 || n < 0) throw DomainError("invalid exclusion arguments");
    // top = G + (1-g)(N-1) = (G g_den + (g_den - g_num)(N-1)) / g_den
    const long numer = big_g * g_den + (g_den - g_num) * (n - 1);
    if (numer % g_den != 0) throw DomainError("factorial arguments are not integers for this g");
    const long top = numer / g_den;
    if (top < 0 || top - n < 0) throw DomainError("over-exclusion: factorial argument below zero");
    boost::multiprecision::cpp_int w = 1;
    for (long k = 1; k <= n; ++k) {
        w *= top - n + k;
        w /= k;
    }
    return w;
}

/// One group of D degenerate states at occupation n per state.
struct ExclusionLevel {
    double degeneracy = 1.0;
    double occupation = 0.0;
    double g = 0.0;
};

namespace detail {

inline double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace detail

/// Entropy per state: [1+(1-g)n] ln[1+(1-g)n] - (1-gn) ln(1-gn) - n ln n.
/// A filled level (g n >= 1) is the incompressible endpoint and is rejected
/// like every other thermodynamic function at maximum density.
inline double exclusion_entropy_per_state(double n, double g) {
    if (n < 0.0) throw DomainError("occupation must be non-negative");
    if (g < 0.0) throw DomainError("exclusion parameter must be non-negative");
    if (g * n >= 1.0) throw IncompressibleError("occupation reached the maximum 1/g");
    return detail::xlogx(1.0 + (1.0 - g) * n) - detail::xlogx(1.0 - g * n) - detail::xlogx(n);
}

/// S = sum_k D_k s(n_k, g_k).
inline double exclusion_entropy(std::span<const ExclusionLevel> levels) {
    double s = 0.0;
    for (const auto& l : levels) s += l.degeneracy * exclusion_entropy_per_state(l.occupation, l.g);
    return s;
}

/// S = sum_k V_k [rho_k ln(1 - alpha rho_k) - rho_k ln(rho_k h^D) + rho_k],
/// V_k = D_k h^D the phase-space volume of level k.
inline double classical_limit_entropy(std::span<const double> rho, std::span<const double> volumes, double alpha,
                                      double h, int dim = 1) {
    if (rho.size() != volumes.size()) throw DomainError("need one volume per density");
    const double hd = std::pow(h, dim);
    double s = 0.0;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        detail::check_density(alpha, rho[k]);
        if (rho[k] == 0.0) continue;
        s += volumes[k] * (rho[k] * std::log1p(-alpha * rho[k]) - rho[k] * std::log(rho[k] * hd) + rho[k]);
    }
    return s;
}

/// beta P = (G / V) ln(1 + n / (1 - g n)) for one degenerate level.
inline double exclusion_eos(double big_g, double volume, double n, double g) {
    if (!(volume > 0.0)) throw DomainError("volume must be positive");
    if (n < 0.0) throw DomainError("occupation must be non-negative");
    if (g * n >= 1.0) throw IncompressibleError("occupation reached the maximum 1/g");
    return big_g / volume * std::log1p(n / (1.0 - g * n));
}

/// beta P = rho / (1 - alpha rho).
inline double classical_eos(double rho, double alpha) {
    detail::check_density(alpha, rho);
    return rho / (1.0 - alpha * rho);
}

struct SweepRow {
    double h = 0.0;
    double g = 0.0;
    double entropy_quantum = 0.0;    // per unit phase-space volume
    double entropy_classical = 0.0;  // per unit phase-space volume
    double entropy_gap = 0.0;        // |quantum - classical|
    double beta_p_quantum = 0.0;
    double beta_p_classical = 0.0;
    double beta_p_gap = 0.0;  // relative
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double entropy_order = 0.0;  // ln(gap ratio)/ln(h ratio) over the two finest rows
    double pressure_order = 0.0;
};

namespace detail {

inline double asymptotic_order(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    if (m < 2 || !(y[m - 1] > 0.0) || !(y[m - 2] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::log(y[m - 2] / y[m - 1]) / std::log(x[m - 2] / x[m - 1]);
}

}  // namespace detail

/// For each h sets g = alpha/h^D and n = rho h^D, evaluates the quantum
/// entropy density and EOS of one degenerate level (G = A/h^D states in
/// volume `kappa` A) and compares with the classical forms.
inline SweepResult double_limit_sweep(double alpha, double rho, std::span<const double> hs, int dim = 1,
                                      double kappa = 1.0) {
    detail::check_density(alpha, rho);
    if (!(kappa > 0.0)) throw DomainError("volume conversion factor must be positive");
    SweepResult out;
    std::vector<double> xs, s_gaps, p_gaps;
    for (double h : hs) {
        if (!(h > 0.0)) throw DomainError("h must be positive");
        const double hd = std::pow(h, dim);
        SweepRow row;
        row.h = h;
        row.g = alpha / hd;
        const double n = rho * hd;
        row.entropy_quantum = exclusion_entropy_per_state(n, row.g) / hd;
        row.entropy_classical = rho * std::log1p(-alpha * rho) - rho * std::log(rho * hd) + rho;
        row.entropy_gap = std::abs(row.entropy_quantum - row.entropy_classical);
        // per unit phase-space volume: G / V = 1 / (kappa h^D)
        row.beta_p_quantum = exclusion_eos(1.0 / hd, kappa, n, row.g);
        row.beta_p_classical = classical_eos(rho, alpha) / kappa;
        row.beta_p_gap = std::abs(row.beta_p_quantum - row.beta_p_classical) / std::abs(row.beta_p_classical);
        out.rows.push_back(row);
        xs.push_back(h);
        s_gaps.push_back(row.entropy_gap);
        p_gaps.push_back(row.beta_p_gap);
    }
    out.entropy_order = detail::asymptotic_order(xs, s_gaps);
    out.pressure_order = detail::asymptotic_order(xs, p_gaps);
    return out;
}

}  // namespace kahlerstat::statmech
