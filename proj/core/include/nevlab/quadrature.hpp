#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace nevlab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;
};

/// Adaptive Gauss-Kronrod (G7,K15) on [a,b] to absolute tolerance.
/// Nodes are interior, so integrable endpoint singularities are allowed.
/// Throws NumericError when the interval budget is exhausted and
/// `throw_on_failure` is set; otherwise reports converged=false.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, double abs_tol,
                              int max_intervals = 4000,
                              bool throw_on_failure = true);

/// Fixed-order double-exponential (tanh-sinh) rule on [a,b].
/// Handles log-type endpoint singularities with spectral accuracy.
QuadResult integrate_tanh_sinh(const std::function<double(double)>& f,
                               double a, double b, double abs_tol,
                               int max_level = 12);

/// Angles on the circle where the integrand needs splitting.
/// `singular` marks points where the integrand blows up (integrably).
struct CircleSplit {
    double angle = 0.0;
    bool singular = false;
};

/// Mean value (1/2pi) * integral over [0,2pi) of f(theta).
/// Splits at the given angles; segments touching a singular split are
/// integrated with the double-exponential rule.
QuadResult circle_average(const std::function<double(double)>& f,
                          double abs_tol,
                          std::vector<CircleSplit> splits = {},
                          int max_intervals_per_segment = 4000);

/// Integral over the disc {|w| < r} of weight(|w|) * g(w) dA, written as
/// a radial integral of weight(t) * t * (angular integral of g).
/// `angular_hints(t)` may supply extra split angles for ring t.
/// `radial_breaks` lists radii where the weight has kinks.
QuadResult disc_integral(const std::function<double(const Complex&)>& g,
                         const std::function<double(double)>& radial_weight,
                         double r, double abs_tol,
                         const std::function<std::vector<double>(double)>& angular_hints = nullptr,
                         const std::vector<double>& radial_breaks = {});

/// Integral over {|w| < r} of log(r/|w|) * g(w) dA.  The logarithmic
/// weight is flattened by the substitution t = r*exp(-s), which keeps
/// full accuracy at the pole of the weight.
QuadResult disc_integral_log_weight(const std::function<double(const Complex&)>& g,
                                    double r, double abs_tol,
                                    const std::function<std::vector<double>(double)>& angular_hints = nullptr);

/// The height integral  int_{r0}^{r} dt/t  int_{|w|<t} g dA,  evaluated
/// by parts as one area integral with weight min(log(r/|w|), log(r/r0)).
QuadResult height_integral(const std::function<double(const Complex&)>& g,
                           double r0, double r, double abs_tol,
                           const std::function<std::vector<double>(double)>& angular_hints = nullptr);

/// Path integral of a complex 1-form coefficient along a polyline.
/// Each segment is integrated with the adaptive Gauss-Kronrod rule.
Complex integrate_polyline(const std::function<Complex(const Complex&)>& phi,
                           const std::vector<Complex>& points,
                           double abs_tol, double* error_estimate = nullptr);

} // namespace nevlab
