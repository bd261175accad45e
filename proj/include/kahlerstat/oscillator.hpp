// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oscillator.hpp
 * @brief Lowest-Landau-level particles in an extra harmonic trap: classical
 *        and quantum partition functions and their hbar -> 0 agreement.
 *
 * H = hbar omega sum zbar_i d_{zbar_i} + V0 with omega_t = sqrt(omega_c^2 +
 * omega_0^2), omega = omega_t - omega_c and the ground energy
 * V0 = hbar omega_t [nu N(N-1)/2 + N/2]. The symbol b = beta hbar omega is
 * used throughout. The symplectic form's N-th power is called the Liouville
 * density here to keep it apart from the frequency omega.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "planar.hpp"
#include "statistics.hpp"

namespace kahlerstat::oscillator {

struct OscillatorSystem {
    int n = 1;
    double nu = 0.0;  // statistics exponent; may exceed 1 along hbar -> 0 sweeps
    double omega_c = 0.0;
    double omega_0 = 1.0;
    double beta = 1.0;
    double hbar = 1.0;

    double omega_t() const noexcept { return std::hypot(omega_c, omega_0); }
    double omega() const noexcept { return omega_t() - omega_c; }
    /// b = beta hbar omega
    double b() const noexcept { return beta * hbar * omega(); }
    double h() const noexcept { return two_pi * hbar; }
};

namespace detail {

inline void validate(const OscillatorSystem& s) {
    if (s.n < 1) throw DomainError("particle number must be at least 1");
    if (s.nu < 0.0) throw DomainError("statistics exponent must be non-negative");
    if (s.omega_c < 0.0 || s.omega_0 < 0.0) throw DomainError("frequencies must be non-negative");
    if (!(s.beta > 0.0) || !(s.hbar > 0.0)) throw DomainError("beta and hbar must be positive");
    if (!(s.b() > 0.0)) throw DomainError("beta hbar omega must be positive (omega_0 > 0)");
}

}  // namespace detail

/// V0 = hbar omega_t [nu N(N-1)/2 + N/2].
inline double ground_energy(const OscillatorSystem& s) {
    const double n = s.n;
    return s.hbar * s.omega_t() * (0.5 * s.nu * n * (n - 1.0) + 0.5 * n);
}

/// ln Z_cl = -beta V0 - N ln b - ln N!.
inline double log_classical_partition(const OscillatorSystem& s) {
    detail::validate(s);
    return -s.beta * ground_energy(s) - s.n * std::log(s.b()) - std::lgamma(s.n + 1.0);
}

/// Z_cl = e^{-beta V0} / (b^N N!).
inline double classical_partition(const OscillatorSystem& s) { return std::exp(log_classical_partition(s)); }

/// ln Z_q = -beta V0 - sum_{k=1}^N ln(1 - e^{-k b}).
inline double log_quantum_partition(const OscillatorSystem& s) {
    detail::validate(s);
    double acc = -s.beta * ground_energy(s);
    for (int k = 1; k <= s.n; ++k) acc -= std::log(-std::expm1(-k * s.b()));
    return acc;
}

/// Z_q = e^{-beta V0} prod_{k=1}^N (1 - e^{-k b})^{-1}.
inline double quantum_partition(const OscillatorSystem& s) { return std::exp(log_quantum_partition(s)); }

struct RatioRow {
    double hbar = 0.0;
    double nu = 0.0;
    double b = 0.0;
    double log_quantum = 0.0;
    double log_classical = 0.0;
    double ratio_minus_one = 0.0;
};

struct RatioTable {
    std::vector<RatioRow> rows;
    double order = 0.0;  // slope of ln|ratio - 1| against ln b
};

/// Z_q / Z_cl along a decreasing hbar sequence with hbar nu held at its
/// value for `base`.
inline RatioTable classical_limit_ratio(const OscillatorSystem& base, std::span<const double> hbars) {
    detail::validate(base);
    const double hbar_nu = base.hbar * base.nu;
    RatioTable t;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (double hb : hbars) {
        OscillatorSystem s = base;
        s.hbar = hb;
        s.nu = hbar_nu / hb;
        RatioRow r;
        r.hbar = hb;
        r.nu = s.nu;
        r.b = s.b();
        r.log_quantum = log_quantum_partition(s);
        r.log_classical = log_classical_partition(s);
        // the ground-energy factor cancels; form the log-ratio without it
        double log_ratio = s.n * std::log(r.b) + std::lgamma(s.n + 1.0);
        for (int k = 1; k <= s.n; ++k) log_ratio -= std::log(-std::expm1(-k * r.b));
        r.ratio_minus_one = std::expm1(log_ratio);
        t.rows.push_back(r);
        if (r.ratio_minus_one > 0.0) {
            const double lx = std::log(r.b), ly = std::log(r.ratio_minus_one);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++m;
        }
    }
    t.order = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : std::numeric_limits<double>::quiet_NaN();
    return t;
}

struct McEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
    std::size_t batches = 0;
};

inline constexpr std::size_t mc_batch_size = 10000;

namespace detail {

/// Deterministic per-batch generator derived from the master seed.
inline std::mt19937_64 batch_engine(std::uint64_t seed, std::size_t batch) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace detail

/// Monte Carlo estimate of Z = h^{-N} int (Liouville density / N!) e^{-beta V}
/// for N in {1, 2}, with V = hbar omega sum z_i d_{z_i} K + V0 and K the
/// regular (gauge-reduced) pair potential. Samples come from the isotropic
/// Gaussian e^{-b|z_i|^2}; estimates and errors use batch means over batches
/// of 10^4 samples. `rel_budget` bounds stderr/estimate.
inline McEstimate mc_partition_oracle(const OscillatorSystem& s, const Statistics& stats, std::size_t samples,
                                      std::uint64_t seed,
                                      double rel_budget = std::numeric_limits<double>::infinity()) {
    detail::validate(s);
    if (s.n != 1 && s.n != 2) throw DomainError("Monte Carlo oracle supports N = 1 or N = 2");
    if (s.n == 2 && std::abs(stats.nu() - s.nu) > 1e-12)
        throw DomainError("statistics exponent disagrees with the system's nu");
    const std::size_t batches = samples / mc_batch_size;
    if (batches < 2) throw DomainError("Monte Carlo oracle needs at least two batches of 10^4 samples");

    const double b = s.b();
    const double hbar = s.hbar;
    const double h = s.h();
    const double beta_hw = b;  // beta hbar omega
    const double width = 1.0 / std::sqrt(2.0 * b);  // per real component
    const double log_q_norm = std::log(b / pi);     // ln of (b/pi) per particle
    const double n_fact = s.n == 1 ? 1.0 : 2.0;

    std::vector<double> means(batches);
    for (std::size_t k = 0; k < batches; ++k) {
        auto eng = detail::batch_engine(seed, k);
        std::normal_distribution<double> gauss(0.0, width);
        double sum = 0.0;
        for (std::size_t i = 0; i < mc_batch_size; ++i) {
            const double x1 = gauss(eng);
            const double y1 = gauss(eng);
            const Complex z1(x1, y1);
            double log_q = log_q_norm - b * std::norm(z1);
            double liouville = 0.0;
            double energy = 0.0;  // beta (V - V0)
            if (s.n == 1) {
                liouville = 2.0 * hbar;
                energy = beta_hw * std::norm(z1);
            } else {
                const double x2 = gauss(eng);
                const double y2 = gauss(eng);
                const Complex z2(x2, y2);
                log_q += log_q_norm - b * std::norm(z2);
                const Complex cm = 0.5 * (z1 + z2);
                const double rel_s = std::norm(z1 - z2);
                const auto k_rel = planar::relative_radial_potential(rel_s, stats, planar::FermionGauge::reduced);
                // det(2 hbar H) with H = diag(2, H_rel) and unit Jacobian
                liouville = (2.0 * hbar) * (2.0 * hbar) * 2.0 * k_rel.hessian;
                energy = beta_hw * (2.0 * std::norm(cm) + rel_s * k_rel.slope);
            }
            sum += liouville * std::exp(-energy - log_q) / (std::pow(h, s.n) * n_fact);
        }
        means[k] = sum / static_cast<double>(mc_batch_size);
    }
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= static_cast<double>(batches);
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= static_cast<double>(batches - 1);
    const double ground = std::exp(-s.beta * ground_energy(s));

    McEstimate out;
    out.estimate = mean * ground;
    // a constant integrand (N = 1) gives zero spread; keep a roundoff floor
    out.standard_error = std::max(std::sqrt(var / static_cast<double>(batches)) * ground, 1e-12 * std::abs(out.estimate));
    out.samples = batches * mc_batch_size;
    out.batches = batches;
    if (out.standard_error > rel_budget * std::abs(out.estimate))
        throw ConvergenceError("Monte Carlo standard error above the requested budget", {out.estimate, out.standard_error});
    return out;
}

struct RegulatorCheck {
    double entropy_oscillator = 0.0;  // per particle
    double entropy_sphere = 0.0;      // per particle, thermodynamic-limit form
    double effective_area = 0.0;      // A matched to the trap, e h / b
    double density = 0.0;
    double relative_gap = 0.0;
};

/// Entropy per particle of the trapped classical gas, S = ln Z + beta E with
/// E = V0 + N/beta, against the sphere-regulated S at the matched area
/// A = e h / b (the area for which both agree at alpha = 0 after Stirling).
inline RegulatorCheck regulator_entropy_check(const OscillatorSystem& s) {
    detail::validate(s);
    RegulatorCheck r;
    const double n = s.n;
    const double s_osc = log_classical_partition(s) + s.beta * ground_energy(s) + n;
    r.entropy_oscillator = s_osc / n;
    r.effective_area = std::exp(1.0) * s.h() / s.b();
    r.density = n / r.effective_area;
    const double alpha = s.nu * s.h();
    if (alpha * r.density >= 1.0) throw IncompressibleError("matched density reached 1/alpha");
    const double s_sph = n * std::log1p(-alpha * r.density) + n * std::log(r.effective_area / s.h()) - n * std::log(n) + n;
    r.entropy_sphere = s_sph / n;
    r.relative_gap = std::abs(r.entropy_oscillator - r.entropy_sphere) / std::abs(r.entropy_sphere);
    return r;
}

}  // namespace kahlerstat::oscillator
