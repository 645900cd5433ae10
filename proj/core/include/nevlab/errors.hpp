#pragma once

#include <stdexcept>
#include <string>

namespace nevlab {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Quadrature or iteration failed to reach the requested tolerance.
/// Carries the tolerance actually achieved so callers can decide.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved tolerance " + std::to_string(achieved) + ")"),
          achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

/// A zero of the tracked function sits on the integration contour and
/// could not be moved off by radius nudging.
class ContourZeroError : public std::runtime_error {
public:
    explicit ContourZeroError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration file is syntactically or semantically invalid.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Sampled Gauss curvature leaves the declared bound interval.
class CurvatureBoundError : public std::runtime_error {
public:
    explicit CurvatureBoundError(const std::string& what) : std::runtime_error(what) {}
};

/// Characteristic did not grow enough for a limsup-type estimate.
class InsufficientGrowthError : public std::runtime_error {
public:
    explicit InsufficientGrowthError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nevlab
