// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file geometry.hpp
 * @brief Kähler potential -> connection, symplectic tensor and phase-space volume.
 *
 * Conventions (hbar carried by the field):
 *   f_{zbar_i z_j} = i hbar d_{zbar_i} d_{z_j} K,       K in units of hbar
 *   A_i  = (i/2) hbar d_{z_i} K,   A_ibar = conj(A_i)
 *   ds^2 = -2i f_{zbar_i z_j} dzbar_i dz_j
 *   V    = -int f dzbar ^ dz = -[ oint A dz + oint Abar dzbar ]
 * The boundary orientation is counter-clockwise so that volumes are positive.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "quadrature.hpp"
#include "statistics.hpp"

namespace kahlerstat {

using Complex = std::complex<double>;
using PointView = std::span<const Complex>;

/// Evaluator bundle for a Kähler potential on C^N. `potential` returns K/hbar;
/// the optional analytic callbacks return d_{z_i}(K/hbar) and
/// d_{zbar_i} d_{z_j}(K/hbar).
struct KahlerField {
    std::size_t dimension = 1;
    std::function<double(PointView)> potential;
    std::function<std::vector<Complex>(PointView)> gradient;
    std::function<ComplexMatrix(PointView)> hessian;
    double hbar = 1.0;
    std::string name;

    bool has_analytic_gradient() const noexcept { return static_cast<bool>(gradient); }
    bool has_analytic_hessian() const noexcept { return static_cast<bool>(hessian); }
};

enum class DerivativeMode { analytic, finite_diff, richardson };

struct FiniteDifferenceOptions {
    /// Step along Re z_i and Im z_i is relative_step * max(1, |z_i|) unless
    /// `step` overrides it.
    double relative_step = 1e-4;
    std::optional<double> step;
};

/// f_{zbar_i z_j} after symmetrisation, plus the max |H_ij - conj(H_ji)| of the
/// hermitian part H = f / (i hbar) before it was symmetrised.
struct SymplecticTensor {
    ComplexMatrix f;
    double hermiticity_defect = 0.0;

    /// Hermitian metric tensor g = -i f (so ds^2 = 2 g dzbar dz).
    ComplexMatrix metric() const {
        ComplexMatrix g(f.rows(), f.cols());
        for (std::size_t i = 0; i < f.rows(); ++i)
            for (std::size_t j = 0; j < f.cols(); ++j) g(i, j) = Complex(0.0, -1.0) * f(i, j);
        return g;
    }
};

struct BerryConnection {
    std::vector<Complex> holomorphic;      // A_i
    std::vector<Complex> antiholomorphic;  // A_ibar
};

namespace detail {

inline std::string describe_singularity(PointView z) {
    std::ostringstream msg;
    msg << "Kähler potential is singular";
    if (z.size() >= 2) {
        std::size_t bi = 0;
        std::size_t bj = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < z.size(); ++i)
            for (std::size_t j = i + 1; j < z.size(); ++j) {
                const double d = std::abs(z[i] - z[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        msg << ": coordinates " << bi << " and " << bj << " coincide (|z_" << bi << " - z_" << bj
            << "| = " << best << ")";
    } else if (!z.empty()) {
        msg << " at z = " << z[0].real() << (z[0].imag() < 0 ? "" : "+") << z[0].imag() << "i";
    }
    return msg.str();
}

inline double checked_potential(const KahlerField& field, PointView z) {
    const double k = field.potential(z);
    if (!std::isfinite(k)) throw DomainError(describe_singularity(z));
    return k;
}

inline std::vector<double> fd_steps(PointView z, const FiniteDifferenceOptions& opt) {
    std::vector<double> steps(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        steps[i] = opt.step ? *opt.step : opt.relative_step * std::max(1.0, std::abs(z[i]));
    return steps;
}

/// Shift real coordinate `a` (2i -> Re z_i, 2i+1 -> Im z_i) by `delta`.
inline void shift(std::vector<Complex>& w, std::size_t a, double delta) {
    const std::size_t i = a / 2;
    if (a % 2 == 0)
        w[i] += Complex(delta, 0.0);
    else
        w[i] += Complex(0.0, delta);
}

/// Real Hessian d_a d_b (K/hbar) in the 2N real coordinates; every entry,
/// including (a,b) and (b,a), is computed from its own stencil.
inline DenseMatrix<double> real_hessian(const KahlerField& field, PointView z,
                                        const std::vector<double>& steps, double k0) {
    const std::size_t n2 = 2 * z.size();
    DenseMatrix<double> d(n2, n2);
    std::vector<Complex> w(z.begin(), z.end());
    for (std::size_t a = 0; a < n2; ++a) {
        const double ha = steps[a / 2];
        for (std::size_t b = 0; b < n2; ++b) {
            const double hb = steps[b / 2];
            if (a == b) {
                shift(w, a, ha);
                const double kp = field.potential(w);
                shift(w, a, -2.0 * ha);
                const double km = field.potential(w);
                shift(w, a, ha);
                d(a, a) = (kp - 2.0 * k0 + km) / (ha * ha);
            } else {
                shift(w, a, ha);
                shift(w, b, hb);
                const double kpp = field.potential(w);
                shift(w, b, -2.0 * hb);
                const double kpm = field.potential(w);
                shift(w, a, -2.0 * ha);
                const double kmm = field.potential(w);
                shift(w, b, 2.0 * hb);
                const double kmp = field.potential(w);
                shift(w, a, ha);
                shift(w, b, -hb);
                d(a, b) = (kpp - kpm - kmp + kmm) / (4.0 * ha * hb);
            }
            if (!std::isfinite(d(a, b))) throw DomainError(describe_singularity(z));
        }
    }
    return d;
}

/// H_ij = d_{zbar_i} d_{z_j} from the real Hessian.
inline ComplexMatrix complex_hessian(const DenseMatrix<double>& d, std::size_t n) {
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t xi = 2 * i, yi = 2 * i + 1, xj = 2 * j, yj = 2 * j + 1;
            h(i, j) = 0.25 * Complex(d(xi, xj) + d(yi, yj), d(yi, xj) - d(xi, yj));
        }
    return h;
}

inline ComplexMatrix fd_hessian(const KahlerField& field, PointView z, const FiniteDifferenceOptions& opt,
                                double k0) {
    return complex_hessian(real_hessian(field, z, fd_steps(z, opt), k0), z.size());
}

inline std::vector<Complex> fd_gradient(const KahlerField& field, PointView z, const FiniteDifferenceOptions& opt) {
    const auto steps = fd_steps(z, opt);
    std::vector<Complex> w(z.begin(), z.end());
    std::vector<Complex> grad(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        double partial[2];
        for (std::size_t c = 0; c < 2; ++c) {
            const std::size_t a = 2 * i + c;
            shift(w, a, steps[i]);
            const double kp = field.potential(w);
            shift(w, a, -2.0 * steps[i]);
            const double km = field.potential(w);
            shift(w, a, steps[i]);
            partial[c] = (kp - km) / (2.0 * steps[i]);
        }
        // d_z = (d_x - i d_y) / 2
        grad[i] = 0.5 * Complex(partial[0], -partial[1]);
        if (!std::isfinite(grad[i].real()) || !std::isfinite(grad[i].imag()))
            throw DomainError(describe_singularity(z));
    }
    return grad;
}

}  // namespace detail

inline DerivativeMode default_mode(const KahlerField& field) {
    return field.has_analytic_hessian() ? DerivativeMode::analytic : DerivativeMode::finite_diff;
}

/// Hessian of K/hbar: H_ij = d_{zbar_i} d_{z_j} (K/hbar), unsymmetrised.
inline ComplexMatrix potential_hessian(const KahlerField& field, PointView z, DerivativeMode mode,
                                       const FiniteDifferenceOptions& opt = {}) {
    if (z.size() != field.dimension)
        throw std::invalid_argument("configuration dimension does not match the field");
    const double k0 = detail::checked_potential(field, z);
    switch (mode) {
    case DerivativeMode::analytic: {
        if (!field.has_analytic_hessian())
            throw std::invalid_argument("field '" + field.name + "' has no analytic Hessian");
        auto h = field.hessian(z);
        for (std::size_t i = 0; i < h.rows(); ++i)
            for (std::size_t j = 0; j < h.cols(); ++j)
                if (!std::isfinite(h(i, j).real()) || !std::isfinite(h(i, j).imag()))
                    throw DomainError(detail::describe_singularity(z));
        return h;
    }
    case DerivativeMode::finite_diff:
        return detail::fd_hessian(field, z, opt, k0);
    case DerivativeMode::richardson: {
        const auto steps = detail::fd_steps(z, opt);
        auto coarse = detail::complex_hessian(detail::real_hessian(field, z, steps, k0), z.size());
        std::vector<double> fine_steps(steps);
        for (double& s : fine_steps) s *= 0.5;
        auto fine = detail::complex_hessian(detail::real_hessian(field, z, fine_steps, k0), z.size());
        ComplexMatrix out(z.size(), z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
            for (std::size_t j = 0; j < z.size(); ++j) out(i, j) = (4.0 * fine(i, j) - coarse(i, j)) / 3.0;
        return out;
    }
    }
    throw std::invalid_argument("unknown derivative mode");
}

/// f_{zbar_i z_j} = i hbar d_{zbar_i} d_{z_j} K. The hermitian part is
/// symmetrised and the pre-symmetrisation defect reported.
inline SymplecticTensor symplectic_tensor(const KahlerField& field, PointView z, DerivativeMode mode,
                                          const FiniteDifferenceOptions& opt = {}) {
    const auto h = potential_hessian(field, z, mode, opt);
    const std::size_t n = h.rows();
    SymplecticTensor out{ComplexMatrix(n, n), 0.0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out.hermiticity_defect = std::max(out.hermiticity_defect, std::abs(h(i, j) - std::conj(h(j, i))));
            const Complex sym = 0.5 * (h(i, j) + std::conj(h(j, i)));
            out.f(i, j) = Complex(0.0, field.hbar) * sym;
        }
    return out;
}

inline SymplecticTensor symplectic_tensor(const KahlerField& field, PointView z) {
    return symplectic_tensor(field, z, default_mode(field));
}

/// A_i = (i/2) hbar d_{z_i} K and A_ibar = conj(A_i) (real normalisation).
inline BerryConnection berry_connection(const KahlerField& field, PointView z,
                                        std::optional<DerivativeMode> mode = std::nullopt,
                                        const FiniteDifferenceOptions& opt = {}) {
    if (z.size() != field.dimension)
        throw std::invalid_argument("configuration dimension does not match the field");
    detail::checked_potential(field, z);
    const DerivativeMode m =
        mode.value_or(field.has_analytic_gradient() ? DerivativeMode::analytic : DerivativeMode::finite_diff);
    std::vector<Complex> grad;
    if (m == DerivativeMode::analytic) {
        if (!field.has_analytic_gradient())
            throw std::invalid_argument("field '" + field.name + "' has no analytic gradient");
        grad = field.gradient(z);
    } else {
        grad = detail::fd_gradient(field, z, opt);
    }
    BerryConnection a;
    a.holomorphic.resize(grad.size());
    a.antiholomorphic.resize(grad.size());
    for (std::size_t i = 0; i < grad.size(); ++i) {
        if (!std::isfinite(grad[i].real()) || !std::isfinite(grad[i].imag()))
            throw DomainError(detail::describe_singularity(z));
        a.holomorphic[i] = Complex(0.0, 0.5 * field.hbar) * grad[i];
        a.antiholomorphic[i] = std::conj(a.holomorphic[i]);
    }
    return a;
}

/// Angular extent of a two-dimensional integration domain. Relative
/// coordinates of two identical particles cover only half the plane.
enum class AngularRange { half, full };

/// Integration domain for one complex degree of freedom.
class Region2D {
public:
    enum class Kind { disk, annulus, full_sphere };

    static Region2D disk(double radius, AngularRange range = AngularRange::full, int resolution = 32) {
        return Region2D(Kind::disk, 0.0, radius, 0.0, range, resolution);
    }
    static Region2D annulus(double inner, double outer, AngularRange range = AngularRange::full,
                            int resolution = 32) {
        return Region2D(Kind::annulus, inner, outer, 0.0, range, resolution);
    }
    /// Whole sphere with 2j flux quanta, in the rescaled chart z -> sqrt(2j) z.
    static Region2D full_sphere(double j, int resolution = 32) {
        if (!(j > 0.0)) throw DomainError("sphere needs j > 0");
        return Region2D(Kind::full_sphere, 0.0, std::numeric_limits<double>::infinity(), j, AngularRange::full,
                        resolution);
    }

    Kind kind() const noexcept { return kind_; }
    double inner_radius() const noexcept { return inner_; }
    double outer_radius() const noexcept { return outer_; }
    double j() const noexcept { return j_; }
    AngularRange angular_range() const noexcept { return range_; }
    int resolution() const noexcept { return resolution_; }
    double angular_extent() const noexcept { return range_ == AngularRange::half ? pi : two_pi; }

private:
    Region2D(Kind kind, double inner, double outer, double j, AngularRange range, int resolution)
        : kind_(kind), inner_(inner), outer_(outer), j_(j), range_(range), resolution_(resolution) {
        if (!(inner >= 0.0) || !(outer > inner))
            throw DomainError("region radii must satisfy R > r0 >= 0");
        if (resolution < 16) throw DomainError("region resolution must be at least 16");
    }

    Kind kind_;
    double inner_;
    double outer_;
    double j_;
    AngularRange range_;
    int resolution_;
};

namespace detail {

inline void require_single_coordinate(const KahlerField& field) {
    if (field.dimension != 1)
        throw std::invalid_argument("volume integrals need a field of one complex coordinate");
}

/// 2 hbar H(z) = density of -f dzbar^dz with respect to dx dy.
inline double volume_density(const KahlerField& field, Complex z, DerivativeMode mode) {
    const Complex pt[1] = {z};
    const auto h = potential_hessian(field, PointView(pt, 1), mode);
    return 2.0 * field.hbar * h(0, 0).real();
}

/// -2 Re int A_z dz along z(t), t in [t0, t1], with dz/dt supplied.
template <typename Path, typename Tangent>
Estimate connection_line_integral(const KahlerField& field, Path path, Tangent tangent, double t0, double t1,
                                  std::size_t initial_panels, std::optional<DerivativeMode> mode) {
    auto integrand = [&](double t) {
        const Complex pt[1] = {path(t)};
        const auto a = berry_connection(field, PointView(pt, 1), mode);
        return -2.0 * (a.holomorphic[0] * tangent(t)).real();
    };
    const auto rule = gauss_legendre(16);
    std::size_t panels = std::max<std::size_t>(1, initial_panels);
    double previous = composite_gl(integrand, t0, t1, panels, rule);
    for (int level = 0; level < 12; ++level) {
        panels *= 2;
        const double current = composite_gl(integrand, t0, t1, panels, rule);
        if (converged(current, previous, 1e-12, 1e-14)) return {current, std::abs(current - previous)};
        if (level == 11) throw ConvergenceError("boundary integral did not converge", {previous, current});
        previous = current;
    }
    return {previous, 0.0};
}

inline Estimate arc_integral(const KahlerField& field, double radius, double phi0, double phi1, int resolution,
                             std::optional<DerivativeMode> mode) {
    return connection_line_integral(
        field, [&](double phi) { return std::polar(radius, phi); },
        [&](double phi) { return Complex(0.0, 1.0) * std::polar(radius, phi); }, phi0, phi1,
        static_cast<std::size_t>(resolution / 16), mode);
}

inline Estimate ray_integral(const KahlerField& field, double phi, double r0, double r1,
                             std::optional<DerivativeMode> mode) {
    const Complex dir = std::polar(1.0, phi);
    return connection_line_integral(
        field, [&](double r) { return r * dir; }, [&](double) { return dir; }, r0, r1, 4, mode);
}

}  // namespace detail

/// V = -int f dzbar ^ dz over the region, evaluated by tensor-product
/// Gauss-Legendre in (r, phi).
inline Estimate volume_area_integral(const KahlerField& field, const Region2D& region,
                                     std::optional<DerivativeMode> mode = std::nullopt) {
    detail::require_single_coordinate(field);
    const DerivativeMode m = mode.value_or(default_mode(field));
    const double phi_max = region.angular_extent();
    const auto y_panels = static_cast<std::size_t>(std::max(1, region.resolution() / 16));
    if (region.kind() == Region2D::Kind::full_sphere) {
        // r = sqrt(2j) tan(theta/2), theta in [0, pi)
        const double scale = std::sqrt(2.0 * region.j());
        auto integrand = [&](double theta, double phi) {
            const double half = 0.5 * theta;
            const double r = scale * std::tan(half);
            const double drdtheta = scale / (2.0 * std::cos(half) * std::cos(half));
            return detail::volume_density(field, std::polar(r, phi), m) * r * drdtheta;
        };
        return adaptive_integrate_2d(integrand, 0.0, pi, 0.0, phi_max, y_panels);
    }
    auto integrand = [&](double r, double phi) {
        return detail::volume_density(field, std::polar(r, phi), m) * r;
    };
    return adaptive_integrate_2d(integrand, region.inner_radius(), region.outer_radius(), 0.0, phi_max, y_panels);
}

/// Same volume from the connection on the boundary (Stokes). Half-range
/// sectors include their two radial edges; the full sphere uses the circle
/// around the antipode, extrapolated to zero radius.
inline Estimate volume_boundary_integral(const KahlerField& field, const Region2D& region,
                                         std::optional<DerivativeMode> mode = std::nullopt) {
    detail::require_single_coordinate(field);
    const double phi_max = region.angular_extent();
    const int res = region.resolution();

    if (region.kind() == Region2D::Kind::full_sphere) {
        const double scale = std::sqrt(2.0 * region.j());
        auto around_antipode = [&](double eps) {
            const double r = scale / std::tan(0.5 * eps);
            return detail::arc_integral(field, r, 0.0, two_pi, res, mode);
        };
        // I(eps) = I0 + c2 eps^2 + c4 eps^4 + ...
        const double e = 1e-2;
        const auto i1 = around_antipode(e);
        const auto i2 = around_antipode(0.5 * e);
        const auto i3 = around_antipode(0.25 * e);
        const double r12 = (4.0 * i2.value - i1.value) / 3.0;
        const double r23 = (4.0 * i3.value - i2.value) / 3.0;
        const double value = (16.0 * r23 - r12) / 15.0;
        return {value, std::abs(value - r23) + i1.error + i2.error + i3.error};
    }

    Estimate total{};
    auto add = [&total](const Estimate& e, double sign) {
        total.value += sign * e.value;
        total.error += e.error;
    };
    add(detail::arc_integral(field, region.outer_radius(), 0.0, phi_max, res, mode), +1.0);
    if (region.inner_radius() > 0.0)
        add(detail::arc_integral(field, region.inner_radius(), 0.0, phi_max, res, mode), -1.0);
    if (region.angular_range() == AngularRange::half) {
        add(detail::ray_integral(field, 0.0, region.inner_radius(), region.outer_radius(), mode), +1.0);
        add(detail::ray_integral(field, phi_max, region.inner_radius(), region.outer_radius(), mode), -1.0);
    }
    return total;
}

}  // namespace kahlerstat
