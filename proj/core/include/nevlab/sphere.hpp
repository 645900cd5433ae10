#pragma once

#include "nevlab/quadrature.hpp"

namespace nevlab {

/// A point of the Riemann sphere in homogeneous coordinates [a0 : a1],
/// stored normalized so that max(|a0|, |a1|) = 1.  Any nonzero scalar
/// multiple of the pair denotes the same point.
class SpherePoint {
public:
    SpherePoint(Complex a0, Complex a1);

    /// The affine value z as [1 : z].
    static SpherePoint from_affine(Complex z) { return SpherePoint(1.0, z); }
    static SpherePoint infinity() { return SpherePoint(0.0, 1.0); }
    static SpherePoint zero() { return SpherePoint(1.0, 0.0); }

    Complex a0() const { return a0_; }
    Complex a1() const { return a1_; }

    bool is_infinity() const { return std::abs(a0_) == 0.0; }
    /// Affine value a1/a0; infinite for the point at infinity.
    Complex affine() const { return a1_ / a0_; }

    double norm() const; // sqrt(|a0|^2 + |a1|^2), in [1, sqrt(2)]

private:
    Complex a0_, a1_;
};

/// A homogeneous value (f0(w), f1(w)) of a map into the sphere.
struct HomPair {
    Complex f0, f1;
};

/// Chordal distance ||p,q|| = |p0 q1 - p1 q0| / (||p|| ||q||), in [0,1].
double spherical_distance(const SpherePoint& p, const SpherePoint& q);
double spherical_distance(const HomPair& f, const SpherePoint& a);

/// The bracket <f; a> = a0 f1 - a1 f0.  Vanishes exactly where f = a.
Complex chern_bracket(const HomPair& f, const SpherePoint& a);

} // namespace nevlab
