#include "nevlab/surface.hpp"
#include "nevlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nevlab {

SurfaceModel::SurfaceModel(Spec spec) : spec_(std::move(spec)) {
    if (!spec_.lambda) throw DomainError("surface requires a metric weight");
    if (!(spec_.s_radius > 0.0)) throw DomainError("surface radius must be positive");
}

double SurfaceModel::lambda(Complex w) const {
    const double v = spec_.lambda(w);
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError("metric weight must be finite and positive");
    return v;
}

double SurfaceModel::form_norm(Complex w) const {
    return 1.0 / std::sqrt(lambda(w));
}

double green_function(double r, Complex w, double s_radius) {
    if (!(r > 0.0) || !(r < s_radius))
        throw DomainError("green function radius outside (0, R)");
    const double t = std::abs(w);
    if (t == 0.0) throw DomainError("green function pole at the base point");
    if (t > r * (1.0 + 1e-12)) throw DomainError("green function evaluated outside the disc");
    return std::log(r / std::min(t, r)) / kPi;
}

double harmonic_measure_average(const std::function<double(double)>& integrand,
                                double r, double abs_tol,
                                std::vector<CircleSplit> splits) {
    if (!(r > 0.0)) throw DomainError("harmonic measure radius must be positive");
    return circle_average(integrand, abs_tol, std::move(splits)).value;
}

double gauss_curvature(const SurfaceModel& surface, Complex w) {
    if (!(std::abs(w) < surface.s_radius()))
        throw DomainError("curvature point outside the surface");
    const auto& spec = surface.spec();
    if (spec.curvature) return spec.curvature(w);
    double lap;
    if (spec.log_weight_laplacian) {
        lap = spec.log_weight_laplacian(w);
    } else {
        const double h = 1e-4 * std::max(1.0, std::abs(w));
        auto lg = [&](Complex z) { return std::log(surface.lambda(z)); };
        const double lap_e = (lg(w + Complex{h, 0}) + lg(w - Complex{h, 0}) +
                              lg(w + Complex{0, h}) + lg(w - Complex{0, h}) - 4.0 * lg(w)) /
                             (h * h);
        lap = 0.25 * lap_e; // d^2/dw dwbar = Laplacian / 4
    }
    return -lap / surface.lambda(w);
}

double ricci_characteristic(const SurfaceModel& surface, double r0, double r,
                            double abs_tol) {
    if (!(0.0 < r0 && r0 < r && r < surface.s_radius()))
        throw DomainError("ricci characteristic needs 0 < r0 < r < R");
    if (surface.curvature_lower_bound() && *surface.curvature_lower_bound() == 0.0)
        return 0.0; // flat metric
    auto integrand = [&](const Complex& w) {
        return gauss_curvature(surface, w) * surface.lambda(w);
    };
    const QuadResult big = disc_integral_log_weight(integrand, r, 0.5 * abs_tol);
    const QuadResult small = disc_integral_log_weight(integrand, r0, 0.5 * abs_tol);
    return (big.value - small.value) / kPi;
}

std::pair<double, double> form_norm_extrema(const SurfaceModel& surface, double r) {
    if (!(r > 0.0) || r >= surface.s_radius() * (1.0 + 1e-12))
        throw DomainError("form norm extrema radius outside the surface");
    auto scan = [&](int nr, int nt) {
        double lo = surface.form_norm(0.0), hi = lo;
        for (int i = 1; i <= nr; ++i) {
            const double t = r * i / nr;
            for (int j = 0; j < nt; ++j) {
                const double th = kTwoPi * j / nt;
                const double v = surface.form_norm(Complex(t * std::cos(th), t * std::sin(th)));
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        return std::pair<double, double>{lo, hi};
    };
    int nr = 16, nt = 16;
    auto cur = scan(nr, nt);
    for (int pass = 0; pass < 6; ++pass) {
        nr *= 2;
        nt *= 2;
        auto next = scan(nr, nt);
        const bool settled =
            std::abs(next.first - cur.first) <= 1e-3 * std::max(1e-300, std::abs(next.first)) &&
            std::abs(next.second - cur.second) <= 1e-3 * std::max(1e-300, std::abs(next.second));
        cur = next;
        if (settled) break;
    }
    return cur;
}

Complex integrate_form(const ChartPresentation& chart,
                       const std::vector<Complex>& path, double abs_tol) {
    auto phi = [&](const Complex& z) { return chart.phi(z); };
    return integrate_polyline(phi, path, abs_tol);
}

ExhaustionReport exhaustion_check(const ChartPresentation& chart,
                                  const std::vector<double>& radii, int samples) {
    ExhaustionReport report;
    const double dom = chart.domain_radius();

    // Low-discrepancy points of the chart domain (golden-angle spiral).
    const int n_uni = std::min(samples, 10000);
    std::vector<Complex> zs;
    std::vector<Complex> ls;
    zs.reserve(n_uni);
    ls.reserve(n_uni);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n_uni; ++i) {
        const double t = dom * 0.999 * std::sqrt((i + 0.5) / n_uni);
        const double th = golden * i;
        const Complex z(t * std::cos(th), t * std::sin(th));
        zs.push_back(z);
        ls.push_back(chart.period_map(z));
    }

    // Univalence by sampling: sort by Re L and scan the tolerance window.
    {
        std::vector<int> idx(ls.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return ls[a].real() < ls[b].real(); });
        for (size_t i = 0; i < idx.size() && report.univalent; ++i) {
            for (size_t j = i + 1; j < idx.size(); ++j) {
                if (ls[idx[j]].real() - ls[idx[i]].real() > 1e-9) break;
                if (std::abs(ls[idx[j]] - ls[idx[i]]) < 1e-9 &&
                    std::abs(zs[idx[j]] - zs[idx[i]]) > 1e-6) {
                    report.univalent = false;
                    break;
                }
            }
        }
        // The base point must be the only zero of L among the samples.
        for (size_t i = 0; i < zs.size(); ++i) {
            if (std::abs(ls[i]) < 1e-9 && std::abs(zs[i]) > 1e-6) {
                report.univalent = false;
                break;
            }
        }
    }

    // Classification from the growth of sup|L| toward the chart boundary.
    auto boundary_sup = [&](double margin) {
        double m = 0.0;
        for (int j = 0; j < 512; ++j) {
            const double th = kTwoPi * j / 512.0;
            const Complex z(dom * (1.0 - margin) * std::cos(th),
                            dom * (1.0 - margin) * std::sin(th));
            m = std::max(m, std::abs(chart.period_map(z)));
        }
        return m;
    };
    const double m1 = boundary_sup(1e-3);
    const double m2 = boundary_sup(1e-4);
    if (m2 > 3.0 * m1) {
        report.classification = "parabolic";
        report.s_radius_estimate = std::numeric_limits<double>::infinity();
    } else {
        report.classification = "hyperbolic";
        report.s_radius_estimate = m2;
    }

    // Per-radius sublevel reports: sample the round w-disc and pull back.
    double prev = 0.0;
    for (double r : radii) {
        ExhaustionRadiusReport rr;
        rr.radius = r;
        rr.nested = r > prev;
        prev = r;
        const int n = 2000;
        double max_abs_z = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = r * std::sqrt((i + 0.5) / n);
            const double th = golden * i;
            const Complex w(t * std::cos(th), t * std::sin(th));
            Complex z;
            try {
                z = chart.has_closed_form_inverse() ? chart.closed_form_inverse(w)
                                                    : chart.invert_period_map(w);
            } catch (const NumericError&) {
                ++rr.violations;
                continue;
            }
            if (!(std::abs(z) < dom)) {
                ++rr.violations;
                continue;
            }
            max_abs_z = std::max(max_abs_z, std::abs(z));
        }
        rr.boundary_margin = dom - max_abs_z;
        rr.contained = rr.violations == 0 && rr.boundary_margin > 1e-3 * dom;
        report.radii.push_back(rr);
    }
    return report;
}

// --- built-in surfaces -----------------------------------------------------

SurfaceModel make_euclidean_plane() {
    SurfaceModel::Spec s;
    s.kind = "euclidean-plane";
    s.s_radius = std::numeric_limits<double>::infinity();
    s.lambda = [](Complex) { return 1.0; };
    s.log_weight_laplacian = [](Complex) { return 0.0; };
    s.curvature = [](Complex) { return 0.0; };
    s.curvature_lower_bound = 0.0;
    return SurfaceModel(std::move(s));
}

SurfaceModel make_euclidean_disc() {
    SurfaceModel::Spec s;
    s.kind = "euclidean-disc";
    s.s_radius = 1.0;
    s.lambda = [](Complex) { return 1.0; };
    s.log_weight_laplacian = [](Complex) { return 0.0; };
    s.curvature = [](Complex) { return 0.0; };
    s.curvature_lower_bound = 0.0;
    return SurfaceModel(std::move(s));
}

SurfaceModel make_poincare_disc() {
    SurfaceModel::Spec s;
    s.kind = "poincare-disc";
    s.s_radius = 1.0;
    s.lambda = [](Complex w) {
        const double g = 1.0 - std::norm(w);
        return 4.0 / (g * g);
    };
    s.log_weight_laplacian = [](Complex w) {
        const double g = 1.0 - std::norm(w);
        return 2.0 / (g * g);
    };
    s.curvature = [](Complex) { return -0.5; };
    s.curvature_lower_bound = 1.0;
    return SurfaceModel(std::move(s));
}

SurfaceModel make_halfplane_chart_surface() {
    SurfaceModel::Spec s;
    s.kind = "chart";
    s.s_radius = std::numeric_limits<double>::infinity();
    s.lambda = [](Complex) { return 1.0; };
    s.log_weight_laplacian = [](Complex) { return 0.0; };
    s.curvature = [](Complex) { return 0.0; };
    s.curvature_lower_bound = 0.0;
    s.chart = std::make_shared<ChartPresentation>(make_halfplane_chart());
    return SurfaceModel(std::move(s));
}

} // namespace nevlab
