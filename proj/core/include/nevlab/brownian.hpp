#pragma once

#include "nevlab/rng.hpp"
#include "nevlab/surface.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace nevlab {

/// Simulation parameters for metric Brownian motion started at the base
/// point.  In a conformal chart the Brownian trace is the Euclidean
/// trace; the metric enters only through the local time change
/// dt_euclidean = dt / lambda(w).
struct BmConfig {
    long n_paths = 10000;
    double step = 1e-4;   // metric time step
    uint64_t seed = 7771;
    double r_exit = 1.0;
    const SurfaceModel* surface = nullptr;
    long max_steps = 10000000;
    int threads = 0; // 0 = hardware concurrency

    /// Enforces the displacement invariant: the per-step RMS move must
    /// stay under r_exit/100 everywhere in the exit disc.
    void validate() const;
};

struct ExitSamples {
    std::vector<double> angles;       // exit angle per path, path order
    std::vector<double> exit_values;  // u(exit) when a functional is given
    long truncated_paths = 0;         // paths that hit the step budget
    std::vector<double> occupation;   // dV-weighted radial histogram
    double occupation_bin_width = 0.0;
};

/// Runs all paths (in parallel, merged in path order) and records exit
/// angles plus a dV-weighted radial occupation histogram.  With a fixed
/// seed the output is identical across runs and worker counts.
ExitSamples sample_exits(const BmConfig& cfg,
                         const std::function<double(Complex)>& functional = nullptr,
                         int occupation_bins = 50);

/// Kolmogorov-Smirnov distance of the exit angles from the uniform law.
double ks_uniformity_statistic(std::vector<double> angles);

/// Chi-square statistic of the exit angles against uniform bins.
double chi_square_uniform(const std::vector<double>& angles, int bins);

struct DynkinComparison {
    double lhs_analytic = 0.0;  // circle mean of u minus u(0)
    double rhs_analytic = 0.0;  // Green-weighted integral of the Laplacian
    double mc_estimate = 0.0;   // mean of u at the exit points minus u(0)
    double mc_std_error = 0.0;
    long paths = 0;
    long truncated = 0;
    double lhs_vs_rhs = 0.0;
    double mc_vs_lhs_sigmas = 0.0;
};

/// Three-way check of the boundary-average identity
///   mean_{exit}(u) - u(0) = (1/2) int_D g (Delta u) dV
/// for a C^2 test function with Euclidean Laplacian `lap_u` supplied in
/// closed form.  The metric Laplacian and area element are written out
/// against the surface weight and cancel.
DynkinComparison dynkin_check(const std::function<double(Complex)>& u,
                              const std::function<double(Complex)>& lap_u,
                              const BmConfig& cfg, double abs_tol = 1e-8);

} // namespace nevlab
