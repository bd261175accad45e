// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kahlerstat {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (singular potential,
/// over-filled level, density at or above the incompressible limit, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Density reached the maximum 1/alpha; the pressure diverges.
class IncompressibleError : public DomainError {
public:
    explicit IncompressibleError(const std::string& what) : DomainError(what) {}
};

/// A requested problem size exceeds a hard cap (e.g. permanent order).
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(what) {}
};

/// An iterative procedure failed to reach its tolerance. Carries the last
/// values it produced so callers can inspect how far it got.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> partials)
        : Error(what), partials_(std::move(partials)) {}
    explicit ConvergenceError(const std::string& what) : Error(what) {}

    const std::vector<double>& partials() const noexcept { return partials_; }

private:
    std::vector<double> partials_;
};

}  // namespace kahlerstat
