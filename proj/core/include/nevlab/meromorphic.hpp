#pragma once

#include "nevlab/chart.hpp"
#include "nevlab/sphere.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace nevlab {

/// Value and derivative of a homogeneous pair at one point, all four
/// components scaled by the same factor so projective quantities are
/// unchanged.
struct HomJet {
    Complex f0, f1, df0, df1;
};

/// A map into the Riemann sphere given as a common-zero-free holomorphic
/// pair w -> (f0(w), f1(w)) with derivatives, on {|w| < domain_radius}.
/// Evaluations are renormalized by the max modulus of the value pair, so
/// maps like e^w stay representable at large |w|.
class MeromorphicMap {
public:
    MeromorphicMap(std::string catalog_id, std::string params,
                   std::function<HomJet(Complex)> eval,
                   double domain_radius,
                   std::function<std::vector<double>(double)> angular_hints = nullptr);

    const std::string& catalog_id() const { return catalog_id_; }
    const std::string& params() const { return params_; }
    double domain_radius() const { return domain_radius_; }

    /// Renormalized jet; throws DomainError outside the domain.
    HomJet jet(Complex w) const;
    HomPair value(Complex w) const;

    /// True when the pullback density vanished identically on the probe
    /// grid at construction.  Analysis operations refuse such maps.
    bool is_constant() const { return constant_; }

    /// Extra angular split points for ring quadratures at radius r.
    std::vector<double> angular_hints(double r) const;

    /// Projective degree when the map is rational (-1 otherwise); used to
    /// clear chart-inverse poles in composed maps.
    int rational_degree() const { return rational_degree_; }
    void set_rational_degree(int d) { rational_degree_ = d; }

private:
    std::string catalog_id_;
    std::string params_;
    std::function<HomJet(Complex)> eval_;
    double domain_radius_;
    std::function<std::vector<double>(double)> hints_;
    bool constant_ = false;
    int rational_degree_ = -1;

    void probe();
};

/// Density rho(w) of the Fubini-Study pullback against Euclidean area:
/// f* omega_FS = rho dA with rho = |f0 f1' - f1 f0'|^2 / (pi ||f||^4).
/// Finite everywhere, including across poles of f1/f0.
double fs_pullback_density(const MeromorphicMap& f, Complex w);
double fs_pullback_density(const HomJet& jet);

/// Checks the no-common-zero and derivative-consistency requirements by
/// sampling; throws DomainError on failure.
void validate_map(const MeromorphicMap& f, int samples = 64);

// --- catalog -------------------------------------------------------------

/// f = num(w)/den(w) as [den : num]; coefficients in ascending order.
MeromorphicMap make_rational(const std::vector<Complex>& num,
                             const std::vector<Complex>& den,
                             double domain_radius = std::numeric_limits<double>::infinity());

/// f = e^w held as the balanced pair [e^{-w/2} : e^{w/2}].
MeromorphicMap make_exp();

/// f = (aw + b)/(cw + d), ad - bc != 0.
MeromorphicMap make_moebius(Complex a, Complex b, Complex c, Complex d);

/// f = exp(1/(1-w)) on the unit disc (unbounded, but of bounded
/// characteristic: it omits every value of modulus <= sqrt(e)).
MeromorphicMap make_exp_gap();

/// Lacunary series f = sum 2^n w^(2^n) on the unit disc; unbounded
/// characteristic (the coefficients are not square-summable).
MeromorphicMap make_lacunary();

/// The map given by `outer` in the original chart coordinate, expressed
/// in the canonical coordinate through the numerical inverse period map.
MeromorphicMap make_composed(const MeromorphicMap& outer, const ChartPresentation& chart,
                             double domain_radius);

} // namespace nevlab
