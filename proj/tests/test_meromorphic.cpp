#include "nevlab/catalog.hpp"
#include "nevlab/errors.hpp"
#include "nevlab/meromorphic.hpp"

#include <doctest.h>

#include <cmath>

using namespace nevlab;

TEST_CASE("catalog maps pass the sampling validation") {
    const SurfaceModel plane = make_euclidean_plane();
    const SurfaceModel disc = make_euclidean_disc();
    for (const char* id : {"identity", "square", "cubic-roots", "exp", "moebius"})
        CHECK_NOTHROW(validate_map(build_function(id, plane)));
    for (const char* id : {"inv-gap", "exp-gap", "lacunary"})
        CHECK_NOTHROW(validate_map(build_function(id, disc)));
}

TEST_CASE("constant maps are flagged and refused") {
    const MeromorphicMap c = make_rational({{2, 0}}, {{1, 0}});
    CHECK(c.is_constant());
    const MeromorphicMap id = make_rational({{0, 0}, {1, 0}}, {{1, 0}});
    CHECK_FALSE(id.is_constant());
}

TEST_CASE("balanced exponential pair stays representable far out") {
    const MeromorphicMap f = make_exp();
    for (double x : {-600.0, -100.0, 0.0, 100.0, 600.0}) {
        const HomJet j = f.jet(Complex{x, 3.0});
        CHECK(std::isfinite(std::abs(j.f0)));
        CHECK(std::isfinite(std::abs(j.f1)));
        CHECK(std::max(std::abs(j.f0), std::abs(j.f1)) == doctest::Approx(1.0));
    }
    // affine value check where both components are representable
    const HomJet j = f.jet(Complex{1.0, 0.5});
    CHECK(std::abs(j.f1 / j.f0 - std::exp(Complex{1.0, 0.5})) < 1e-12);
}

TEST_CASE("renormalization leaves the density invariant") {
    const MeromorphicMap f = make_exp();
    // rho for e^w depends on x only: (1/pi) e^{2x}/(1+e^{2x})^2
    for (double x : {-30.0, -2.0, 0.0, 2.0, 30.0}) {
        const double rho = fs_pullback_density(f, Complex{x, 1.3});
        const double e2x = std::exp(2.0 * x);
        const double expect = e2x / ((1.0 + e2x) * (1.0 + e2x)) / kPi;
        CHECK(rho == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("moebius requires an invertible matrix") {
    CHECK_THROWS_AS(make_moebius(1.0, 2.0, 2.0, 4.0), DomainError);
}

TEST_CASE("rational degree bookkeeping") {
    const SurfaceModel plane = make_euclidean_plane();
    CHECK(build_function("identity", plane).rational_degree() == 1);
    CHECK(build_function("cubic-roots", plane).rational_degree() == 3);
    CHECK(build_function("moebius", plane).rational_degree() == 1);
    CHECK(build_function("exp", plane).rational_degree() == -1);
}

TEST_CASE("composed map equals its closed form through the chart") {
    const SurfaceModel chart_surface = make_halfplane_chart_surface();
    const MeromorphicMap composed =
        build_function("composed{outer:identity,chart:halfplane}", chart_surface);
    // identity in the z chart is w/(1+w) in the canonical coordinate
    for (const Complex w : {Complex{0.3, 0.2}, Complex{-2.5, 0.1}, Complex{4.0, -3.0}}) {
        const HomJet j = composed.jet(w);
        const Complex expect = w / (1.0 + w);
        CHECK(std::abs(j.f1 / j.f0 - expect) < 1e-9 * (1.0 + std::abs(expect)));
    }
    validate_map(composed);
}

TEST_CASE("composed map with a transcendental outer is rejected on this chart") {
    const SurfaceModel chart_surface = make_halfplane_chart_surface();
    CHECK_THROWS_AS(build_function("composed{outer:exp,chart:halfplane}", chart_surface),
                    DomainError);
}

TEST_CASE("lacunary series: value and derivative at small points") {
    const MeromorphicMap f = make_lacunary();
    // f(w) = w + 2 w^2 + 4 w^4 + 8 w^8 + ...
    const Complex w{0.1, 0.0};
    double expect = 0.0, dexpect = 0.0;
    double coeff = 1.0, p = 0.1;
    for (int n = 0; n < 20; ++n) {
        expect += coeff * p;
        dexpect += coeff * coeff * p / 0.1;
        p *= p;
        coeff *= 2.0;
        if (p == 0.0) break;
    }
    const HomJet j = f.jet(w);
    CHECK(std::abs(j.f1 / j.f0 - expect) < 1e-12);
    CHECK(std::abs(j.df1 / j.f0 - dexpect) < 1e-10);
}

TEST_CASE("domain boundaries are enforced") {
    const SurfaceModel disc = make_euclidean_disc();
    const MeromorphicMap f = build_function("lacunary", disc);
    CHECK_THROWS_AS(f.jet(Complex{1.2, 0.0}), DomainError);
}
