#pragma once

#include "nevlab/meromorphic.hpp"
#include "nevlab/sphere.hpp"

#include <functional>
#include <vector>

namespace nevlab {

/// One zero (or unresolved zero cluster) of an analytic function.
struct ZeroRecord {
    Complex location;
    int multiplicity = 1;
    double residual = 0.0; // |f| at the reported location
    bool cluster = false;  // true when roots were not separated at tol
};

/// A scalar analytic function with an optional closed-form derivative;
/// the derivative falls back to central differences when absent.
struct AnalyticFunction {
    std::function<Complex(Complex)> f;
    std::function<Complex(Complex)> df; // may be empty
};

/// The bracket w -> <f(w); a>, whose zeros are the solutions of f = a.
AnalyticFunction bracket_function(const MeromorphicMap& f, const SpherePoint& a);

/// w -> f0 f1' - f1 f0', the numerator of the spherical derivative; its
/// zeros form the ramification divisor.
AnalyticFunction wronskian_function(const MeromorphicMap& f);

/// Nudges r upward by factors of (1 + 1e-6), at most three times, until
/// no sampled zero sits on the contour.  Throws ContourZeroError after
/// the third nudge.
double resolve_contour_radius(const AnalyticFunction& fn, double r, double domain_radius);

/// Winding number of fn.f around |w| = r by adaptive phase tracking
/// (per-step phase change kept under pi/2, with alias verification).
/// The contour must be free of zeros; use resolve_contour_radius first.
int winding_number_circle(const AnalyticFunction& fn, double r);

/// Winding number around the rectangle [x0,x1] x [y0,y1].
int winding_number_rect(const AnalyticFunction& fn,
                        double x0, double y0, double x1, double y1);

/// Number of zeros of <f; a> inside |w| < r, counted with multiplicity.
/// Equals the number of solutions of f = a in the disc.
int count_zeros(const MeromorphicMap& f, const SpherePoint& a, double r);

/// Quadtree subdivision of the disc's bounding square, keeping cells of
/// nonzero winding until their diameter drops below tol, then Newton
/// refinement.  Sum of multiplicities equals count_zeros at the same
/// (nudged) radius.
std::vector<ZeroRecord> locate_zeros(const AnalyticFunction& fn, double r, double tol,
                                     double domain_radius);
std::vector<ZeroRecord> locate_zeros(const MeromorphicMap& f, const SpherePoint& a,
                                     double r, double tol);

} // namespace nevlab
