// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sphere.hpp
 * @brief SU(2) coherent states on a sphere threaded by 2j flux quanta.
 *
 * Raw chart: stereographic z = -tan(theta/2) e^{-i phi}. The rescaled chart
 * z -> sqrt(2j) z turns the sphere into the plane as j grows.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "linalg.hpp"
#include "statistics.hpp"

namespace kahlerstat::sphere {

inline constexpr std::size_t max_particles = 20;

/// Spin j stored as the integer flux 2j.
class Spin {
public:
    explicit Spin(int twice_j) : twice_j_(twice_j) {
        if (twice_j <= 0) throw DomainError("sphere needs 2j >= 1 flux quanta");
    }
    /// From a half-integer value; rejects anything not a multiple of 1/2.
    static Spin from_j(double j) {
        const double twice = 2.0 * j;
        if (!(twice >= 1.0) || std::abs(twice - std::round(twice)) > 1e-12)
            throw DomainError("j must be a positive half-integer, got " + std::to_string(j));
        return Spin(static_cast<int>(std::lround(twice)));
    }

    int twice_j() const noexcept { return twice_j_; }
    double j() const noexcept { return 0.5 * twice_j_; }
    /// Degeneracy 2j + 1 of the lowest Landau level.
    int degeneracy() const noexcept { return twice_j_ + 1; }
    /// One-particle phase-space volume A = 2j h.
    double area(Units u = {}) const noexcept { return twice_j_ * u.h(); }

private:
    int twice_j_;
};

/// <z|w> = [(1 + zbar z)(1 + wbar w)]^{-j} (1 + zbar w)^{2j}, raw chart.
inline Complex su2_overlap(Complex z, Complex w, const Spin& spin) {
    const double j = spin.j();
    const Complex log_cross = std::log(1.0 + std::conj(z) * w);
    const double log_norms = std::log1p(std::norm(z)) + std::log1p(std::norm(w));
    // integer power of (1 + zbar w): the principal log is safe
    return std::exp(static_cast<double>(spin.twice_j()) * log_cross - j * log_norms);
}

/// Overlap in the rescaled chart (arguments divided by sqrt(2j)).
inline Complex su2_overlap_rescaled(Complex z, Complex w, const Spin& spin) {
    const double s = std::sqrt(static_cast<double>(spin.twice_j()));
    return su2_overlap(z / s, w / s, spin);
}

/// Real number kept as sign * exp(log_abs) so that (1 + zbar z)^{2j}
/// products with large j stay representable.
struct LogScalar {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    double value() const {
        if (sign == 0) return 0.0;
        if (log_abs > std::log(std::numeric_limits<double>::max()))
            throw ResourceError("value exp(" + std::to_string(log_abs) + ") overflows double");
        return sign * std::exp(log_abs);
    }
};

/// |N|^{-2} = sum_P eta_P prod_i (1 + zbar_{P(i)} z_i)^{2j} in the raw chart:
/// the permanent (bosons) or determinant (fermions) of (1 + zbar_i z_j)^{2j}.
/// Row and column scalings d_i = j ln(1 + |z_i|^2) are factored out, leaving
/// the bounded overlap matrix.
inline LogScalar sphere_norm_sq_inverse(std::span<const Complex> z, const Spin& spin, const Statistics& s) {
    if (s.is_anyon()) throw DomainError("sphere N-anyon normalisation is not implemented");
    if (z.size() > max_particles)
        throw ResourceError("normalisation capped at " + std::to_string(max_particles) + " particles");
    if (s.is_fermion() && z.size() > static_cast<std::size_t>(spin.degeneracy()))
        throw DomainError("more fermions than the 2j+1 available states");
    double log_scale = 0.0;
    // extended precision for the same reason as the planar case
    using LC = std::complex<long double>;
    const long double tj = spin.twice_j();
    DenseMatrix<LC> m(z.size(), z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        log_scale += 2.0 * spin.j() * std::log1p(std::norm(z[i]));
        for (std::size_t k = 0; k < z.size(); ++k) {
            const LC a(z[i]), b(z[k]);
            m(i, k) = std::exp(tj * std::log(1.0L + std::conj(a) * b) -
                               0.5L * tj * (std::log1p(std::norm(a)) + std::log1p(std::norm(b))));
        }
    }
    const long double reduced = (s.is_boson() ? ryser_permanent(m) : determinant(m)).real();
    if (reduced == 0.0L) return {};
    return {log_scale + static_cast<double>(std::log(std::abs(reduced))), reduced > 0.0L ? 1 : -1};
}

/// N hbar 2j ln(1 + zbar z / 2j): N bosons on one point, rescaled chart.
inline double coinciding_boson_kahler(Complex z, const Spin& spin, int n, Units u = {}) {
    const double tj = spin.twice_j();
    return static_cast<double>(n) * u.hbar * tj * std::log1p(std::norm(z) / tj);
}

/// Field for the coinciding-point potential, one complex coordinate.
inline KahlerField coinciding_boson_field(const Spin& spin, int n, Units u = {}) {
    const double tj = spin.twice_j();
    const double nn = static_cast<double>(n);
    KahlerField f;
    f.dimension = 1;
    f.hbar = u.hbar;
    f.name = "sphere-boson-coinciding";
    f.potential = [tj, nn](PointView z) { return nn * tj * std::log1p(std::norm(z[0]) / tj); };
    f.gradient = [tj, nn](PointView z) {
        return std::vector<Complex>{nn * std::conj(z[0]) / (1.0 + std::norm(z[0]) / tj)};
    };
    f.hessian = [tj, nn](PointView z) {
        const double q = 1.0 + std::norm(z[0]) / tj;
        return ComplexMatrix(1, 1, Complex(nn / (q * q), 0.0));
    };
    return f;
}

/// Outcome of a volume law; `saturated` marks a non-positive base
/// (over-filled or exactly filled level), in which case `value` is 0.
struct VolumeResult {
    double value = 0.0;
    double log_value = -std::numeric_limits<double>::infinity();
    bool saturated = false;
    double base = 0.0;
};

/// V = (A - nu (N-1) h)^N / N!.
inline VolumeResult nparticle_volume(double area, int n, double nu, double h) {
    if (n < 1) throw DomainError("particle number must be at least 1");
    if (!(h > 0.0)) throw DomainError("h must be positive");
    VolumeResult r;
    r.base = area - nu * static_cast<double>(n - 1) * h;
    if (r.base <= 0.0) {
        r.saturated = true;
        return r;
    }
    double factorial = 1.0;
    for (int k = 2; k <= n; ++k) factorial *= static_cast<double>(k);
    r.value = std::pow(r.base, n) / factorial;
    r.log_value = static_cast<double>(n) * std::log(r.base) - std::lgamma(static_cast<double>(n) + 1.0);
    return r;
}

}  // namespace kahlerstat::sphere
