#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nevlab {

struct GridSpec {
    double r_min = 0.0;
    double r_max = 0.0;
    int points = 40;
    bool geometric = true;
};

/// Flat key = value experiment description.  Key names are documented in
/// the README; unknown keys and malformed values fail with a diagnostic
/// naming the offending field.
struct ExperimentConfig {
    std::string surface_spec = "euclidean-plane";
    std::string function_spec = "identity";
    std::vector<std::string> target_specs;
    std::optional<double> r0; // default: 1 when R > 2, else R/2
    GridSpec grid;
    std::string gamma_kind = "one"; // one | inverse-gap
    double delta = 0.1;
    double tol = 1e-8;
    double zero_tol = 1e-6;
    uint64_t seed = 7771;
    int threads = 0;
    std::string out_dir = "out";
    std::vector<std::string> checks; // fmt smt smt-curvature defects calculus borel oracle
    double fmt_bound = 1.0;
    double smt_coverage = 0.99;
    std::optional<double> curvature_bound; // C for the curvature-form check
    double exceptional_budget = 2.0;
    std::string calculus_density = "one";  // one | abs2 | zero
    std::string borel_curve = "log";       // log | linear | double-exp
    long oracle_paths = 10000;
    double oracle_step = 1e-5;
    std::optional<double> oracle_radius;   // default 0.8 * min(1, r_max)

    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);

    /// Cross-field validation once the surface radius is known.
    /// Throws ConfigError naming the offending field.
    void validate(double s_radius) const;
};

} // namespace nevlab
