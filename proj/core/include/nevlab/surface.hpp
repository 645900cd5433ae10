#pragma once

#include "nevlab/chart.hpp"
#include "nevlab/quadrature.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nevlab {

/// An exhausted surface reduced to its canonical coordinate w, where the
/// discs of the exhaustion are the round discs {|w| < r}, the defining
/// form is dw and the base point sits at w = 0.  The conformal metric is
/// lambda(w)|dw|^2 with Riemannian area density dV = 2*lambda dA.
class SurfaceModel {
public:
    struct Spec {
        std::string kind;                       // euclidean-plane | euclidean-disc | poincare-disc | chart
        double s_radius = 0.0;                  // canonical radius, may be infinite
        std::function<double(Complex)> lambda;  // conformal weight, > 0
        // d^2 log(lambda) / dw dwbar when known in closed form
        std::function<double(Complex)> log_weight_laplacian;
        // Gauss curvature in closed form when known
        std::function<double(Complex)> curvature;
        std::optional<double> curvature_lower_bound; // -C <= K <= 0 when set
        std::shared_ptr<ChartPresentation> chart;    // original-chart presentation
    };

    explicit SurfaceModel(Spec spec);

    const Spec& spec() const { return spec_; }
    const std::string& kind() const { return spec_.kind; }
    double s_radius() const { return spec_.s_radius; }
    bool has_chart() const { return static_cast<bool>(spec_.chart); }
    const ChartPresentation& chart() const { return *spec_.chart; }
    std::optional<double> curvature_lower_bound() const { return spec_.curvature_lower_bound; }

    double lambda(Complex w) const;
    /// ||S||_h = lambda^{-1/2}: the metric norm of the defining form.
    double form_norm(Complex w) const;
    /// Riemannian area density against Euclidean dA.
    double area_density(Complex w) const { return 2.0 * lambda(w); }

private:
    Spec spec_;
};

/// Green function of the half-Laplacian on {|w| < r} with pole at 0:
/// (1/pi) log(r/|w|).  Independent of the metric weight.
double green_function(double r, Complex w, double s_radius);

/// Mean of the integrand over the harmonic measure of the circle of
/// radius r, which reduces to dtheta/2pi in the canonical coordinate.
double harmonic_measure_average(const std::function<double(double)>& integrand,
                                double r, double abs_tol,
                                std::vector<CircleSplit> splits = {});

/// Gauss curvature -(1/lambda) d^2(log lambda)/dw dwbar, from the closed
/// form when available, else a five-point finite-difference stencil with
/// step 1e-4 * max(1, |w|).
double gauss_curvature(const SurfaceModel& surface, Complex w);

/// Green-weighted curvature characteristic between radii r0 < r:
///   (1/2) int_{D(r)} g_r K dV  -  (1/2) int_{D(r0)} g_{r0} K dV.
double ricci_characteristic(const SurfaceModel& surface, double r0, double r,
                            double abs_tol = 1e-8);

/// (inf, sup) of the form norm over {|w| <= r}, refined on a doubling
/// polar grid until both change by less than 0.1%.
std::pair<double, double> form_norm_extrema(const SurfaceModel& surface, double r);

/// Path integral of the chart's form coefficient along a polyline from
/// the base point.
Complex integrate_form(const ChartPresentation& chart,
                       const std::vector<Complex>& path, double abs_tol = 1e-10);

struct ExhaustionRadiusReport {
    double radius = 0.0;
    bool contained = false;     // all w-disc samples map into the chart domain
    double boundary_margin = 0.0;
    bool nested = true;
    long violations = 0;        // samples that left the chart domain
};

struct ExhaustionReport {
    std::string classification; // "parabolic" or "hyperbolic"
    double s_radius_estimate = 0.0; // +inf for parabolic
    std::vector<ExhaustionRadiusReport> radii;
    bool univalent = true;      // no collisions among period-map samples
};

/// Samples the sublevel sets {|L| < r}: containment in the chart domain
/// with positive boundary margin, monotone nesting, and the parabolic /
/// hyperbolic classification from the growth of sup|L| toward the chart
/// boundary.  Violations are reported, not thrown.
ExhaustionReport exhaustion_check(const ChartPresentation& chart,
                                  const std::vector<double>& radii,
                                  int samples = 10000);

// --- built-in surfaces -----------------------------------------------------

SurfaceModel make_euclidean_plane();
SurfaceModel make_euclidean_disc();
SurfaceModel make_poincare_disc();
/// Unit disc carrying the half-plane chart, flat in the canonical
/// coordinate; canonical radius is taken from the exhaustion check.
SurfaceModel make_halfplane_chart_surface();

} // namespace nevlab
