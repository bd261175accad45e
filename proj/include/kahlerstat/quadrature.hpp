// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace kahlerstat {

/// Value together with an estimate of its absolute error.
struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; roots of P_n located by Newton iteration
/// from the Chebyshev-like initial guesses.
inline GaussLegendreRule gauss_legendre(std::size_t n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged root
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double kk = static_cast<double>(k);
            const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
            p0 = p1;
            p1 = p2;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

namespace detail {

template <typename F>
double composite_gl(const F& f, double a, double b, std::size_t panels, const GaussLegendreRule& rule) {
    const double width = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + width * static_cast<double>(p);
        const double mid = lo + 0.5 * width;
        double panel = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            panel += rule.weights[k] * f(mid + 0.5 * width * rule.nodes[k]);
        }
        sum += 0.5 * width * panel;
    }
    return sum;
}

inline bool converged(double current, double previous, double rel_tol, double abs_tol) {
    return std::abs(current - previous) <= std::max(rel_tol * std::abs(current), abs_tol);
}

}  // namespace detail

/// Composite Gauss-Legendre on [a, b], doubling the panel count until two
/// successive levels agree. Throws ConvergenceError with the last two values.
template <typename F>
Estimate adaptive_integrate(const F& f, double a, double b, double rel_tol = 1e-12,
                            double abs_tol = 1e-14, std::size_t order = 16, int max_levels = 14) {
    const auto rule = gauss_legendre(order);
    std::size_t panels = 2;
    double previous = detail::composite_gl(f, a, b, panels, rule);
    for (int level = 0; level < max_levels; ++level) {
        panels *= 2;
        const double current = detail::composite_gl(f, a, b, panels, rule);
        if (detail::converged(current, previous, rel_tol, abs_tol)) {
            return {current, std::abs(current - previous)};
        }
        previous = current;
        if (level + 1 == max_levels) {
            throw ConvergenceError("adaptive quadrature did not converge", {previous, current});
        }
    }
    return {previous, 0.0};
}

/// Tensor-product composite Gauss-Legendre over [x0, x1] x [y0, y1]; both
/// directions are refined together.
template <typename F>
Estimate adaptive_integrate_2d(const F& f, double x0, double x1, double y0, double y1,
                               std::size_t initial_y_panels = 2, double rel_tol = 1e-11,
                               double abs_tol = 1e-14, std::size_t order = 12, int max_levels = 8) {
    const auto rule = gauss_legendre(order);
    auto evaluate = [&](std::size_t x_panels, std::size_t y_panels) {
        return detail::composite_gl(
            [&](double x) {
                return detail::composite_gl([&](double y) { return f(x, y); }, y0, y1, y_panels, rule);
            },
            x0, x1, x_panels, rule);
    };
    std::size_t xp = 2;
    std::size_t yp = std::max<std::size_t>(1, initial_y_panels);
    double previous = evaluate(xp, yp);
    for (int level = 0; level < max_levels; ++level) {
        xp *= 2;
        yp *= 2;
        const double current = evaluate(xp, yp);
        if (detail::converged(current, previous, rel_tol, abs_tol)) {
            return {current, std::abs(current - previous)};
        }
        if (level + 1 == max_levels) {
            throw ConvergenceError("two-dimensional quadrature did not converge", {previous, current});
        }
        previous = current;
    }
    return {previous, 0.0};
}

}  // namespace kahlerstat
