#include "nevlab/meromorphic.hpp"
#include "nevlab/errors.hpp"

#include <cmath>
#include <sstream>

namespace nevlab {

MeromorphicMap::MeromorphicMap(std::string catalog_id, std::string params,
                               std::function<HomJet(Complex)> eval,
                               double domain_radius,
                               std::function<std::vector<double>(double)> angular_hints)
    : catalog_id_(std::move(catalog_id)),
      params_(std::move(params)),
      eval_(std::move(eval)),
      domain_radius_(domain_radius),
      hints_(std::move(angular_hints)) {
    if (!(domain_radius_ > 0.0)) throw DomainError("map domain radius must be positive");
    probe();
}

HomJet MeromorphicMap::jet(Complex w) const {
    if (!(std::abs(w) < domain_radius_))
        throw DomainError("evaluation point outside map domain of " + catalog_id_);
    HomJet j = eval_(w);
    const double m = std::max(std::abs(j.f0), std::abs(j.f1));
    if (m == 0.0 || !std::isfinite(m))
        throw DomainError("map " + catalog_id_ + " produced a degenerate pair");
    j.f0 /= m;
    j.f1 /= m;
    j.df0 /= m;
    j.df1 /= m;
    return j;
}

HomPair MeromorphicMap::value(Complex w) const {
    HomJet j = jet(w);
    return {j.f0, j.f1};
}

std::vector<double> MeromorphicMap::angular_hints(double r) const {
    if (!hints_) return {};
    return hints_(r);
}

void MeromorphicMap::probe() {
    const double r = std::min(1.0, 0.5 * domain_radius_);
    double max_density = 0.0;
    int usable = 0;
    for (int i = 0; i < 24; ++i) {
        const double th = kTwoPi * (i + 0.31) / 24.0;
        const double t = r * (0.2 + 0.8 * ((i * 7) % 5) / 4.0);
        const Complex w(t * std::cos(th), t * std::sin(th));
        try {
            max_density = std::max(max_density, fs_pullback_density(eval_(w)));
            ++usable;
        } catch (const std::exception&) {
            // isolated bad sample (e.g. a chart puncture); skip
        }
    }
    if (usable == 0) throw DomainError("map evaluation failed on the probe grid");
    constant_ = max_density < 1e-14;
}

double fs_pullback_density(const HomJet& jet) {
    const double m = std::max(std::abs(jet.f0), std::abs(jet.f1));
    if (m == 0.0 || !std::isfinite(m))
        throw DomainError("degenerate pair in pullback density");
    const Complex f0 = jet.f0 / m, f1 = jet.f1 / m;
    const Complex df0 = jet.df0 / m, df1 = jet.df1 / m;
    const double w2 = std::norm(f0 * df1 - f1 * df0);
    const double n2 = std::norm(f0) + std::norm(f1);
    return w2 / (kPi * n2 * n2);
}

double fs_pullback_density(const MeromorphicMap& f, Complex w) {
    return fs_pullback_density(f.jet(w));
}

void validate_map(const MeromorphicMap& f, int samples) {
    const double r = std::min(1.0, 0.45 * f.domain_radius());
    for (int i = 0; i < samples; ++i) {
        const double th = kTwoPi * i / samples;
        const double t = r * (0.15 + 0.85 * ((i * 13) % 7) / 6.0);
        const Complex w(t * std::cos(th), t * std::sin(th));
        const HomJet j = f.jet(w);
        if (!std::isfinite(std::abs(j.f0)) || !std::isfinite(std::abs(j.f1)))
            throw DomainError("map value not finite at sample point");
        // Derivative consistency, checked on the affine ratio so the
        // per-point renormalization cannot interfere.
        const double h = 1e-6 * std::max(1.0, std::abs(w));
        const HomJet jp = f.jet(w + h);
        const HomJet jm = f.jet(w - h);
        const Complex wr = j.f0 * j.df1 - j.f1 * j.df0;
        Complex fd, an;
        if (std::abs(j.f0) >= std::abs(j.f1)) {
            fd = (jp.f1 / jp.f0 - jm.f1 / jm.f0) / (2.0 * h);
            an = wr / (j.f0 * j.f0);
        } else {
            fd = (jp.f0 / jp.f1 - jm.f0 / jm.f1) / (2.0 * h);
            an = -wr / (j.f1 * j.f1);
        }
        const double scale = std::abs(an) + std::abs(fd) + 1.0;
        if (std::abs(fd - an) > 5e-5 * scale)
            throw DomainError("derivative pair inconsistent with finite differences");
    }
}

// --- catalog ---------------------------------------------------------------

namespace {

Complex poly_eval(const std::vector<Complex>& c, Complex w) {
    Complex acc{0.0, 0.0};
    for (size_t i = c.size(); i-- > 0;) acc = acc * w + c[i];
    return acc;
}

Complex poly_eval_deriv(const std::vector<Complex>& c, Complex w) {
    Complex acc{0.0, 0.0};
    for (size_t i = c.size(); i-- > 1;) acc = acc * w + static_cast<double>(i) * c[i];
    return acc;
}

std::string poly_to_string(const std::vector<Complex>& c) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        if (c[i].imag() == 0.0)
            os << c[i].real();
        else
            os << c[i].real() << (c[i].imag() < 0 ? "-" : "+") << std::abs(c[i].imag()) << "i";
    }
    os << "]";
    return os.str();
}

} // namespace

MeromorphicMap make_rational(const std::vector<Complex>& num,
                             const std::vector<Complex>& den,
                             double domain_radius) {
    if (num.empty() || den.empty())
        throw DomainError("rational map needs nonempty coefficient lists");
    auto eval = [num, den](Complex w) {
        HomJet j;
        j.f0 = poly_eval(den, w);
        j.f1 = poly_eval(num, w);
        j.df0 = poly_eval_deriv(den, w);
        j.df1 = poly_eval_deriv(num, w);
        return j;
    };
    MeromorphicMap map("rational",
                       "num:" + poly_to_string(num) + " den:" + poly_to_string(den),
                       eval, domain_radius);
    map.set_rational_degree(static_cast<int>(std::max(num.size(), den.size())) - 1);
    return map;
}

MeromorphicMap make_exp() {
    auto eval = [](Complex w) {
        const Complex e = std::exp(0.5 * w);
        HomJet j;
        j.f0 = 1.0 / e;
        j.f1 = e;
        j.df0 = -0.5 / e;
        j.df1 = 0.5 * e;
        return j;
    };
    // |e^w| crosses 1 at Re w = 0: the pullback density ridge sits near
    // the angles +-pi/2 on large circles.
    auto hints = [](double r) {
        std::vector<double> a{0.5 * kPi, -0.5 * kPi};
        if (r > 4.0) {
            a.push_back(0.5 * kPi - 2.0 / r);
            a.push_back(0.5 * kPi + 2.0 / r);
            a.push_back(-0.5 * kPi - 2.0 / r);
            a.push_back(-0.5 * kPi + 2.0 / r);
        }
        return a;
    };
    return MeromorphicMap("exp", "", eval,
                          std::numeric_limits<double>::infinity(), hints);
}

MeromorphicMap make_moebius(Complex a, Complex b, Complex c, Complex d) {
    if (std::abs(a * d - b * c) < 1e-14)
        throw DomainError("moebius map requires ad - bc != 0");
    auto eval = [a, b, c, d](Complex w) {
        HomJet j;
        j.f0 = c * w + d;
        j.f1 = a * w + b;
        j.df0 = c;
        j.df1 = a;
        return j;
    };
    std::ostringstream os;
    os << "a:" << a.real() << " b:" << b.real() << " c:" << c.real() << " d:" << d.real();
    MeromorphicMap map("moebius", os.str(), eval,
                       std::numeric_limits<double>::infinity());
    map.set_rational_degree(1);
    return map;
}

MeromorphicMap make_exp_gap() {
    auto eval = [](Complex w) {
        const Complex u = 1.0 / (1.0 - w);
        const Complex du = u * u;
        const Complex e = std::exp(0.5 * u);
        HomJet j;
        j.f0 = 1.0 / e;
        j.f1 = e;
        j.df0 = -0.5 * du / e;
        j.df1 = 0.5 * du * e;
        return j;
    };
    auto hints = [](double r) {
        const double gap = std::max(1e-6, 1.0 - r);
        return std::vector<double>{0.0, gap, -gap, 3.0 * gap, -3.0 * gap};
    };
    return MeromorphicMap("exp-gap", "", eval, 1.0, hints);
}

MeromorphicMap make_lacunary() {
    auto eval = [](Complex w) {
        Complex s{0.0, 0.0}, ds{0.0, 0.0};
        Complex p = w;        // w^(2^n)
        Complex q{1.0, 0.0};  // w^(2^n - 1)
        double coeff = 1.0;   // 2^n
        for (int n = 0; n < 48; ++n) {
            s += coeff * p;
            ds += coeff * coeff * q;
            const double mag = coeff * coeff * std::max(std::abs(p), std::abs(q));
            if (n > 3 && mag < 1e-18) break;
            q *= p;
            p *= p;
            coeff *= 2.0;
        }
        return HomJet{1.0, s, 0.0, ds};
    };
    return MeromorphicMap("lacunary", "", eval, 1.0);
}

MeromorphicMap make_composed(const MeromorphicMap& outer, const ChartPresentation& chart,
                             double domain_radius) {
    // When the continued inverse has a pole, the naive pair g(Linv(w))
    // picks up that pole; multiplying both components by
    // (w - pole)^(degree * order) restores a holomorphic pair.
    int clear_power = 0;
    Complex pole{0.0, 0.0};
    if (chart.inverse_pole()) {
        if (outer.rational_degree() < 0)
            throw DomainError(
                "composed maps on this chart need a rational outer function");
        pole = chart.inverse_pole()->first;
        clear_power = outer.rational_degree() * chart.inverse_pole()->second;
    }
    auto outer_eval = [outer](Complex z) { return outer.jet(z); };
    auto chart_copy = chart;
    auto eval = [outer_eval, chart_copy, pole, clear_power](Complex w) {
        // The cleared pair is continuous across the puncture; dodge an
        // exact hit by a relative epsilon.
        if (clear_power > 0 && std::abs(w - pole) < 1e-14 * (1.0 + std::abs(pole)))
            w = pole + Complex(2e-14, 2e-14) * (1.0 + std::abs(pole));
        const Complex z = chart_copy.has_closed_form_inverse()
                              ? chart_copy.closed_form_inverse(w)
                              : chart_copy.invert_period_map(w);
        HomJet j = outer_eval(z);
        const Complex dz = 1.0 / chart_copy.phi(z);
        j.df0 *= dz;
        j.df1 *= dz;
        if (clear_power > 0) {
            const Complex q = w - pole;
            Complex qpm1{1.0, 0.0}; // q^(clear_power - 1)
            for (int k = 0; k + 1 < clear_power; ++k) qpm1 *= q;
            const Complex qp = qpm1 * q;
            const Complex dqp = static_cast<double>(clear_power) * qpm1;
            j.df0 = j.df0 * qp + j.f0 * dqp;
            j.df1 = j.df1 * qp + j.f1 * dqp;
            j.f0 *= qp;
            j.f1 *= qp;
        }
        return j;
    };
    MeromorphicMap map("composed", "outer:" + outer.catalog_id() + " chart:" + chart.id(),
                       eval, domain_radius);
    if (outer.rational_degree() >= 0 && chart.inverse_pole())
        map.set_rational_degree(outer.rational_degree() * (1 + chart.inverse_pole()->second));
    return map;
}

} // namespace nevlab
