// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace kahlerstat {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Reduced Planck constant plus the derived h = 2*pi*hbar. Every dimensional
/// operation takes one of these so results can be checked at hbar != 1.
struct Units {
    double hbar = 1.0;

    constexpr double h() const noexcept { return two_pi * hbar; }
};

/// Particle statistics: bosons, fermions or lowest-Landau-level anyons with
/// exponent nu in [0, 1]. nu doubles as the exclusion parameter.
class Statistics {
public:
    enum class Kind { boson, fermion, anyon };

    static constexpr Statistics boson() noexcept { return Statistics(Kind::boson, 0.0); }
    static constexpr Statistics fermion() noexcept { return Statistics(Kind::fermion, 1.0); }
    static Statistics anyon(double nu) {
        if (!(nu >= 0.0 && nu <= 1.0)) {
            throw DomainError("anyon exponent nu must lie in [0, 1], got " + std::to_string(nu));
        }
        return Statistics(Kind::anyon, nu);
    }

    /// Parses "boson", "fermion" or "anyon" (nu taken from the argument).
    static Statistics parse(const std::string& name, double nu = 0.0) {
        if (name == "boson") return boson();
        if (name == "fermion") return fermion();
        if (name == "anyon") return anyon(nu);
        throw DomainError("unknown statistics '" + name + "'");
    }

    constexpr Kind kind() const noexcept { return kind_; }
    constexpr double nu() const noexcept { return nu_; }
    constexpr bool is_boson() const noexcept { return kind_ == Kind::boson; }
    constexpr bool is_fermion() const noexcept { return kind_ == Kind::fermion; }
    constexpr bool is_anyon() const noexcept { return kind_ == Kind::anyon; }

    /// Permutation factor eta_P for a permutation of the given parity.
    /// Undefined for anyons beyond the two-body case.
    int permutation_sign(bool odd_permutation) const {
        switch (kind_) {
        case Kind::boson:
            return 1;
        case Kind::fermion:
            return odd_permutation ? -1 : 1;
        case Kind::anyon:
            break;
        }
        throw DomainError("permutation sign is not defined for anyons");
    }

    std::string name() const {
        switch (kind_) {
        case Kind::boson:
            return "boson";
        case Kind::fermion:
            return "fermion";
        case Kind::anyon:
            return "anyon";
        }
        return "?";
    }

    friend constexpr bool operator==(const Statistics&, const Statistics&) = default;

private:
    constexpr Statistics(Kind kind, double nu) noexcept : kind_(kind), nu_(nu) {}

    Kind kind_;
    double nu_;
};

}  // namespace kahlerstat
