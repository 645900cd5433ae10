#include "nevlab/chart.hpp"
#include "nevlab/errors.hpp"

#include <cmath>

namespace nevlab {

ChartPresentation::ChartPresentation(std::string id,
                                     std::function<Complex(Complex)> phi,
                                     std::function<Complex(Complex)> closed_form_L,
                                     std::function<Complex(Complex)> closed_form_inverse,
                                     double domain_radius)
    : id_(std::move(id)),
      phi_(std::move(phi)),
      closed_L_(std::move(closed_form_L)),
      closed_inverse_(std::move(closed_form_inverse)),
      domain_radius_(domain_radius) {
    if (!phi_) throw DomainError("chart requires a form coefficient");
}

Complex ChartPresentation::period_map(Complex z) const {
    if (closed_L_) return closed_L_(z);
    if (z == Complex{0.0, 0.0}) return {0.0, 0.0};
    return integrate_polyline(phi_, {Complex{0.0, 0.0}, z}, 1e-11);
}

Complex ChartPresentation::closed_form_inverse(Complex w) const {
    if (!closed_inverse_) throw DomainError("chart " + id_ + " has no closed-form inverse");
    return closed_inverse_(w);
}

namespace {

// Damped Newton solve of L(z) = target from the given seed.
bool newton_solve(const std::function<Complex(Complex)>& L,
                  const std::function<Complex(Complex)>& phi, Complex& z,
                  Complex target) {
    Complex cur = z;
    for (int it = 0; it < 60; ++it) {
        const Complex slope = phi(cur);
        if (!(std::abs(slope) > 0.0) || !std::isfinite(std::abs(slope))) return false;
        const Complex resid = L(cur) - target;
        if (!std::isfinite(std::abs(resid))) return false;
        Complex dz = resid / slope;
        const double cap = 4.0 * std::max(1.0, std::abs(cur));
        if (std::abs(dz) > cap) dz *= cap / std::abs(dz);
        cur -= dz;
        if (std::abs(dz) < 1e-13 * std::max(1.0, std::abs(cur))) {
            const Complex check = L(cur) - target;
            if (std::abs(check) < 1e-9 * std::max(1.0, std::abs(target))) {
                z = cur;
                return true;
            }
            return false;
        }
    }
    return false;
}

} // namespace

Complex ChartPresentation::invert_period_map(Complex w) const {
    if (w == Complex{0.0, 0.0}) return {0.0, 0.0};
    auto L = [this](Complex z) { return period_map(z); };
    auto phi = [this](Complex z) { return phi_(z); };

    // Adaptive Newton continuation along a waypoint path from 0.  The
    // straight ray can cross a pole of the inverse; detours through
    // +-i|w| cover those targets.
    auto follow = [&](const std::vector<Complex>& waypoints, Complex& out) {
        Complex z{0.0, 0.0};
        Complex from{0.0, 0.0};
        for (const Complex& to : waypoints) {
            double t = 0.0, step = 0.25;
            while (t < 1.0) {
                const double t_next = std::min(1.0, t + step);
                Complex trial = z;
                if (newton_solve(L, phi, trial, from + t_next * (to - from))) {
                    z = trial;
                    t = t_next;
                    step = std::min(0.25, step * 2.0);
                } else {
                    step *= 0.5;
                    if (step < 1e-7) return false;
                }
            }
            from = to;
        }
        out = z;
        return true;
    };

    const double m = std::abs(w);
    const std::vector<std::vector<Complex>> paths = {
        {w},
        {Complex(0.0, m), w},
        {Complex(0.0, -m), w},
        {Complex(m, 0.0), w},
    };
    for (const auto& path : paths) {
        Complex z;
        if (follow(path, z)) return z;
    }
    throw NumericError("period map inversion did not converge", std::abs(w));
}

ChartPresentation make_halfplane_chart() {
    auto phi = [](Complex z) {
        const Complex g = 1.0 - z;
        return 1.0 / (g * g);
    };
    auto L = [](Complex z) { return z / (1.0 - z); };
    auto Linv = [](Complex w) { return w / (1.0 + w); };
    ChartPresentation chart("halfplane", phi, L, Linv, 1.0);
    chart.set_inverse_pole(Complex{-1.0, 0.0}, 1);
    return chart;
}

ChartPresentation make_identity_chart(double domain_radius) {
    auto phi = [](Complex) { return Complex{1.0, 0.0}; };
    auto L = [](Complex z) { return z; };
    auto Linv = [](Complex w) { return w; };
    return ChartPresentation("identity", phi, L, Linv, domain_radius);
}

} // namespace nevlab
