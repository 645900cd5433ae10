#include "nevlab/sphere.hpp"
#include "nevlab/errors.hpp"

#include <cmath>

namespace nevlab {

SpherePoint::SpherePoint(Complex a0, Complex a1) : a0_(a0), a1_(a1) {
    const double m = std::max(std::abs(a0_), std::abs(a1_));
    if (m == 0.0 || !std::isfinite(m))
        throw DomainError("sphere point requires a finite nonzero homogeneous pair");
    a0_ /= m;
    a1_ /= m;
}

double SpherePoint::norm() const {
    return std::hypot(std::abs(a0_), std::abs(a1_));
}

double spherical_distance(const SpherePoint& p, const SpherePoint& q) {
    const double num = std::abs(p.a0() * q.a1() - p.a1() * q.a0());
    return num / (p.norm() * q.norm());
}

double spherical_distance(const HomPair& f, const SpherePoint& a) {
    const double m = std::max(std::abs(f.f0), std::abs(f.f1));
    if (m == 0.0 || !std::isfinite(m))
        throw DomainError("homogeneous pair (0,0) has no spherical distance");
    const Complex f0 = f.f0 / m;
    const Complex f1 = f.f1 / m;
    const double nf = std::hypot(std::abs(f0), std::abs(f1));
    return std::abs(a.a0() * f1 - a.a1() * f0) / (nf * a.norm());
}

Complex chern_bracket(const HomPair& f, const SpherePoint& a) {
    return a.a0() * f.f1 - a.a1() * f.f0;
}

} // namespace nevlab
