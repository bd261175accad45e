// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>

#include "errors.hpp"

namespace kahlerstat {

inline constexpr std::size_t series_term_cap = 100000;

namespace detail {

/// Neumaier-compensated accumulator in extended precision.
class CompensatedSum {
public:
    void add(long double x) noexcept {
        const long double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    long double value() const noexcept { return sum_ + carry_; }

private:
    long double sum_ = 0.0L;
    long double carry_ = 0.0L;
};

[[noreturn]] inline void series_cap_reached(const char* what, long double partial) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " did not converge within " << series_term_cap << " terms (partial sum "
        << static_cast<double>(partial) << ")";
    throw ResourceError(msg.str());
}

}  // namespace detail

/// 1F2(a; b1, b2; y) by its ascending series. Terms may grow before they
/// decay, so the stopping test only fires once the term ratio is below one.
inline long double hypergeometric_1f2(double a, double b1, double b2, double y) {
    if (y == 0.0) return 1.0L;
    detail::CompensatedSum sum;
    long double term = 1.0L;
    sum.add(term);
    for (std::size_t m = 0; m < series_term_cap; ++m) {
        const long double mm = static_cast<long double>(m);
        const long double ratio = (a + mm) * static_cast<long double>(y) /
                                  ((b1 + mm) * (b2 + mm) * (mm + 1.0L));
        term *= ratio;
        sum.add(term);
        if (std::fabs(ratio) < 1.0L && std::fabs(term) < 1e-16L * std::fabs(sum.value())) return sum.value();
        if (term == 0.0L) return sum.value();
    }
    detail::series_cap_reached("1F2 series", sum.value());
}

/// Moments of S(x) = sum_m x^(2m) / Gamma(2m + 1 + nu), the radial factor of
/// the two-anyon normalisation. `s0 = S`, `s1 = x S'`, `s2 = x^2 S''`, all in
/// extended precision. S = 1F2(1; 1/2 + nu/2, 1 + nu/2; x^2/4) / Gamma(1 + nu).
struct AnyonSeries {
    long double s0 = 0.0L;
    long double s1 = 0.0L;
    long double s2 = 0.0L;
};

inline AnyonSeries anyon_radial_series(double nu, double x) {
    const long double lnu = nu;
    long double term = 1.0L / std::tgamma(1.0L + lnu);
    detail::CompensatedSum s0;
    detail::CompensatedSum s1;
    detail::CompensatedSum s2;
    s0.add(term);
    const long double x2 = static_cast<long double>(x) * static_cast<long double>(x);
    if (x2 == 0.0L) return {s0.value(), 0.0L, 0.0L};
    for (std::size_t m = 0; m < series_term_cap; ++m) {
        const long double k = 2.0L * static_cast<long double>(m);
        const long double ratio = x2 / ((k + 1.0L + lnu) * (k + 2.0L + lnu));
        term *= ratio;
        const long double p = k + 2.0L;  // power of x in the new term
        s0.add(term);
        s1.add(p * term);
        s2.add(p * (p - 1.0L) * term);
        if (ratio < 1.0L && p * p * term < 1e-16L * s0.value()) return {s0.value(), s1.value(), s2.value()};
    }
    detail::series_cap_reached("anyon radial series", s0.value());
}

}  // namespace kahlerstat
