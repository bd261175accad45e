// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file vortex.hpp
 * @brief Self-dual Chern-Simons-Ginzburg-Landau vortices.
 *
 * At the self-dual coupling an axially symmetric winding-N vortex has
 * rho = |phi|^2 = e^u with
 *     u'' + u'/r = e^u - 1,   u ~ 2N ln r (r -> 0),   u -> 0 (r -> inf),
 * and B = (1 - rho)/2. Writing u = 2N ln r + v and t = ln r gives
 *     v_tt = e^{2t} (e^{2Nt + v} - 1),
 * which is discretised with central differences on a uniform t-mesh and
 * solved by damped Newton iteration with tridiagonal solves.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "sphere.hpp"
#include "statistics.hpp"

namespace kahlerstat::vortex {

struct VortexParams {
    double mu = 1.0 / (4.0 * pi);  // Chern-Simons coupling
    int n = 1;                     // winding number
    double lambda = 1.0;           // dimensionless self-coupling; only 1 is solvable here
    double r_min = 1e-3;
    double r_max = 20.0;
    std::size_t points = 2000;
    double tol = 1e-10;  // Newton stops when max |dv| < tol
    int max_iterations = 200;
};

struct RadialProfile {
    std::vector<double> r;
    std::vector<double> rho;
    std::vector<double> b;
    double flux = 0.0;    // integral of B d^2x
    double energy = 0.0;  // integral of B/2 d^2x, the saturated bound
    double ode_residual = 0.0;
    double constraint_residual = 0.0;  // max |B + (rho - 1)/2|
    double boundary_value = 0.0;       // |u(r_max)|
    int iterations = 0;
};

namespace detail {

// Thomas algorithm; sub[0] and sup[n-1] unused.
inline std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                             std::vector<double> sup, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i];
    return x;
}

}  // namespace detail

/// Solves the radial Bogomolny problem on [r_min, r_max]. The inner edge uses
/// the regular expansion v = v0 - r^2/4 + ...; the outer edge imposes u' = 0
/// (no flux through the boundary) and |u(r_max)| then measures whether the
/// domain is large enough.
inline RadialProfile solve_radial_vortex(const VortexParams& p) {
    if (p.lambda != 1.0) throw DomainError("radial solver requires the self-dual coupling lambda = 1");
    if (p.n < 1) throw DomainError("winding number must be at least 1");
    if (!(p.mu > 0.0)) throw DomainError("Chern-Simons coupling must be positive");
    if (!(p.r_min > 0.0) || !(p.r_max > p.r_min)) throw DomainError("need 0 < r_min < r_max");
    if (p.points < 16) throw DomainError("radial mesh needs at least 16 points");

    const std::size_t m = p.points;
    const double t0 = std::log(p.r_min);
    const double t1 = std::log(p.r_max);
    const double dt = (t1 - t0) / static_cast<double>(m - 1);
    const double two_n = 2.0 * p.n;
    std::vector<double> t(m);
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) {
        t[i] = t0 + dt * static_cast<double>(i);
        // rho = r^{2N}/(1 + r^{2N}) as the starting profile
        v[i] = -std::log1p(std::exp(two_n * t[i]));
    }

    const double inv_dt2 = 1.0 / (dt * dt);
    const double r0 = p.r_min;
    auto residual = [&](const std::vector<double>& w, std::vector<double>& f) {
        f.assign(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            // ghost points: v_t(t0) = -r0^2/2 and v_t(t1) = -2N
            const double left = i == 0 ? w[1] + dt * r0 * r0 : w[i - 1];
            const double right = i + 1 == m ? w[m - 2] - 2.0 * dt * two_n : w[i + 1];
            const double e2t = std::exp(2.0 * t[i]);
            f[i] = (right - 2.0 * w[i] + left) * inv_dt2 - e2t * (std::exp(two_n * t[i] + w[i]) - 1.0);
        }
    };
    auto norm_inf = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double e : x) s = std::max(s, std::abs(e));
        return s;
    };

    std::vector<double> f;
    residual(v, f);
    std::vector<double> history{norm_inf(f)};
    double damping = 0.5;
    RadialProfile out;
    bool converged = false;
    for (int it = 0; it < p.max_iterations; ++it) {
        const std::size_t k = m;
        std::vector<double> sub(k, inv_dt2), diag(k), sup(k, inv_dt2), rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
            const double e2t = std::exp(2.0 * t[i]);
            diag[i] = -2.0 * inv_dt2 - e2t * std::exp(two_n * t[i] + v[i]);
            rhs[i] = -f[i];
        }
        sup[0] = 2.0 * inv_dt2;  // ghost points mirror their neighbours
        sub[k - 1] = 2.0 * inv_dt2;
        const auto dv = detail::solve_tridiagonal(sub, diag, sup, rhs);
        const double step = norm_inf(dv);

        std::vector<double> trial(v);
        for (std::size_t i = 0; i < k; ++i) trial[i] += damping * dv[i];
        std::vector<double> ft;
        residual(trial, ft);
        const double rn = norm_inf(ft);
        if (rn < history.back() || damping <= 1.0 / 64.0) {
            v.swap(trial);
            f.swap(ft);
            history.push_back(rn);
            damping = std::min(1.0, 2.0 * damping);
        } else {
            damping *= 0.5;
            continue;
        }
        out.iterations = it + 1;
        if (step * damping < p.tol || step < p.tol) {
            converged = true;
            break;
        }
    }
    if (!converged) throw ConvergenceError("vortex Newton relaxation did not converge", history);

    out.ode_residual = history.back();
    out.r.resize(m);
    out.rho.resize(m);
    out.b.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.r[i] = std::exp(t[i]);
        out.rho[i] = std::exp(two_n * t[i] + v[i]);
        out.b[i] = 0.5 * (1.0 - out.rho[i]);
        out.constraint_residual =
            std::max(out.constraint_residual, std::abs(out.b[i] + 0.5 * (out.rho[i] - 1.0)));
    }
    // flux: trapezoid in t of 2 pi r^2 B, plus the disc r < r_min where rho ~ 0
    double flux = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double a = out.r[i] * out.r[i] * out.b[i];
        const double c = out.r[i + 1] * out.r[i + 1] * out.b[i + 1];
        flux += 0.5 * dt * (a + c);
    }
    out.flux = two_pi * flux + pi * r0 * r0 * 0.5;
    out.energy = 0.5 * out.flux;
    out.boundary_value = std::abs(two_n * t1 + v[m - 1]);
    if (out.boundary_value > 1e-6)
        throw DomainError("r_max = " + std::to_string(p.r_max) + " too small: |u(r_max)| = " +
                          std::to_string(out.boundary_value));
    return out;
}

/// c in u = 2N ln r + c + O(r^2), read at the innermost mesh point.
inline double core_constant(const RadialProfile& prof, int n) {
    return std::log(prof.rho.front()) - 2.0 * n * std::log(prof.r.front());
}

/// Least-squares slope of ln rho against ln r over the innermost `count`
/// mesh points; approaches 2N.
inline double core_exponent(const RadialProfile& prof, std::size_t count = 20) {
    count = std::min(count, prof.r.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = std::log(prof.r[i]);
        const double y = std::log(prof.rho[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(count);
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

/// Writes r, rho, B as CSV.
inline void write_profile_csv(std::ostream& os, const RadialProfile& prof) {
    os << "r,rho,B\n";
    os.precision(17);
    for (std::size_t i = 0; i < prof.r.size(); ++i) os << prof.r[i] << ',' << prof.rho[i] << ',' << prof.b[i] << '\n';
}

struct StatisticsParameter {
    double alpha = 0.0;  // excluded phase-space area per vortex
    double g = 0.0;      // alpha / h
};

/// alpha = 4 pi mu h, g = 4 pi mu.
inline StatisticsParameter statistics_parameter(double mu, double h) {
    if (!(mu > 0.0)) throw DomainError("Chern-Simons coupling must be positive");
    const double g = 4.0 * pi * mu;
    return {g * h, g};
}

/// N-vortex volume (A - 4 pi mu h (N-1))^N / N!, the sphere law with g = 4 pi mu.
inline sphere::VolumeResult vortex_volume(double area, int n, double mu, double h) {
    return sphere::nparticle_volume(area, n, statistics_parameter(mu, h).g, h);
}

/// Dimensionless form (A - 8 pi^2 (N-1))^N / N!, i.e. mu hbar = 1.
inline sphere::VolumeResult vortex_volume_dimensionless(double area, int n) {
    // g h = 4 pi mu * 2 pi hbar = 8 pi^2 when mu hbar = 1
    return sphere::nparticle_volume(area, n, 1.0, 8.0 * pi * pi);
}

/// Scales between the dimensionless model and physical units:
/// phi ~ sqrt(rho0), r ~ sqrt(mu/rho0), t ~ mu m/(hbar rho0),
/// L ~ hbar^2 rho0/m, phase-space area ~ mu hbar, N-body volume ~ (mu hbar)^N.
class PhysicalScales {
public:
    PhysicalScales(double rho0, double mu, double mass, double hbar)
        : rho0_(rho0), mu_(mu), mass_(mass), hbar_(hbar) {
        if (!(rho0 > 0.0) || !(mu > 0.0) || !(mass > 0.0) || !(hbar > 0.0))
            throw DomainError("physical scales must all be positive");
    }

    double field() const noexcept { return std::sqrt(rho0_); }
    double length() const noexcept { return std::sqrt(mu_ / rho0_); }
    double time() const noexcept { return mu_ * mass_ / (hbar_ * rho0_); }
    double lagrangian() const noexcept { return hbar_ * hbar_ * rho0_ / mass_; }
    double area() const noexcept { return mu_ * hbar_; }
    double volume(int n) const noexcept { return std::pow(mu_ * hbar_, n); }

    double to_physical_area(double a) const noexcept { return a * area(); }
    double from_physical_area(double a) const noexcept { return a / area(); }
    double to_physical_volume(double v, int n) const noexcept { return v * volume(n); }
    double from_physical_volume(double v, int n) const noexcept { return v / volume(n); }
    double to_physical_length(double r) const noexcept { return r * length(); }
    double from_physical_length(double r) const noexcept { return r / length(); }
    double to_physical_time(double t) const noexcept { return t * time(); }
    double from_physical_time(double t) const noexcept { return t / time(); }

private:
    double rho0_;
    double mu_;
    double mass_;
    double hbar_;
};

}  // namespace kahlerstat::vortex
