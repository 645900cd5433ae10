#pragma once

#include "nevlab/quadrature.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nevlab {

/// A surface presented in an original coordinate z: the defining form is
/// phi(z) dz and the period map is L(z) = integral of the form from the
/// base point, with L(0) = 0.  The canonical coordinate is w = L(z).
class ChartPresentation {
public:
    ChartPresentation(std::string id,
                      std::function<Complex(Complex)> phi,
                      std::function<Complex(Complex)> closed_form_L,
                      std::function<Complex(Complex)> closed_form_inverse,
                      double domain_radius);

    const std::string& id() const { return id_; }
    double domain_radius() const { return domain_radius_; }

    Complex phi(Complex z) const { return phi_(z); }
    /// Closed-form period map when supplied, else quadrature along [0, z].
    Complex period_map(Complex z) const;
    bool has_closed_form_L() const { return static_cast<bool>(closed_L_); }
    bool has_closed_form_inverse() const { return static_cast<bool>(closed_inverse_); }
    Complex closed_form_inverse(Complex w) const;

    /// Numerical inverse of the period map: Newton iteration on L(z) = w,
    /// continued along waypoint paths from w = 0 so the branch through
    /// the base point is selected.  Uses the closed form L when available.
    Complex invert_period_map(Complex w) const;

    /// Isolated pole of the analytically continued inverse, when there is
    /// one: (location, order).  Composed maps clear it so their
    /// homogeneous pairs stay holomorphic.
    std::optional<std::pair<Complex, int>> inverse_pole() const { return inverse_pole_; }
    void set_inverse_pole(Complex location, int order) {
        inverse_pole_ = std::make_pair(location, order);
    }

private:
    std::string id_;
    std::function<Complex(Complex)> phi_;
    std::function<Complex(Complex)> closed_L_;
    std::function<Complex(Complex)> closed_inverse_;
    double domain_radius_;
    std::optional<std::pair<Complex, int>> inverse_pole_;
};

/// Built-in chart: the unit disc with phi(z) = (1-z)^-2, whose period
/// map z/(1-z) sends the disc onto the half plane Re w > -1/2.
ChartPresentation make_halfplane_chart();

/// Trivial chart phi = 1, L = z on a disc of the given radius.
ChartPresentation make_identity_chart(double domain_radius);

} // namespace nevlab
