#include "nevlab/errors.hpp"
#include "nevlab/quadrature.hpp"
#include "nevlab/rng.hpp"
#include "nevlab/surface.hpp"

#include <doctest.h>

#include <cmath>

using namespace nevlab;

TEST_CASE("green function closed forms") {
    const double R = std::numeric_limits<double>::infinity();
    CHECK(green_function(std::exp(1.0), 1.0, R) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(green_function(2.0, 1.0, R) == doctest::Approx(std::log(2.0) / kPi).epsilon(1e-14));
    CHECK(green_function(2.0, Complex{0.0, 2.0}, R) == doctest::Approx(0.0));
    CHECK_THROWS_AS(green_function(2.0, 0.0, R), DomainError);
    CHECK_THROWS_AS(green_function(2.0, Complex{3.0, 0.0}, R), DomainError);
}

TEST_CASE("harmonic measure is a probability measure") {
    for (double r : {0.3, 1.0, 17.0})
        CHECK(harmonic_measure_average([](double) { return 1.0; }, r, 1e-13) ==
              doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauss curvature closed and finite-difference routes") {
    const SurfaceModel flat = make_euclidean_plane();
    CHECK(gauss_curvature(flat, Complex{0.4, 0.2}) == doctest::Approx(0.0));

    // The defining formula -(1/lambda) d^2 log(lambda)/dw dwbar gives
    // -1/2 for the weight 4/(1-|w|^2)^2 (half the classical value; the
    // Laplacian convention here is half the usual one).
    const SurfaceModel poincare = make_poincare_disc();
    for (double t : {0.0, 0.3, 0.8})
        CHECK(gauss_curvature(poincare, Complex{t, 0.0}) == doctest::Approx(-0.5).epsilon(1e-12));

    // finite differences against a symbolic oracle for lambda = e^{|w|^2}
    SurfaceModel::Spec spec;
    spec.kind = "gaussian-weight";
    spec.s_radius = std::numeric_limits<double>::infinity();
    spec.lambda = [](Complex w) { return std::exp(std::norm(w)); };
    const SurfaceModel gauss(std::move(spec));
    for (const Complex w : {Complex{0.0, 0.0}, Complex{1.0, 0.5}, Complex{-2.0, 1.0}}) {
        const double expect = -std::exp(-std::norm(w));
        CHECK(gauss_curvature(gauss, w) == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("ricci characteristic closed forms and refinement oracle") {
    const SurfaceModel flat = make_euclidean_plane();
    CHECK(ricci_characteristic(flat, 0.5, 3.0) == doctest::Approx(0.0));

    const SurfaceModel poincare = make_poincare_disc();
    // direct-definition oracle: the curvature form integrates to
    //   int_{r0}^{r} (1/t) (-2 t^2/(1-t^2)) dt = log((1-r^2)/(1-r0^2))
    const double r0 = 0.1, r = 0.9;
    const double direct = std::log((1.0 - r * r) / (1.0 - r0 * r0));
    const double value = ricci_characteristic(poincare, r0, r, 1e-8);
    CHECK(value < 0.0);
    CHECK(value == doctest::Approx(direct).epsilon(1e-8));

    // refinement oracle: fixed-grid Simpson on the Green-weighted form,
    // then a 10x finer radial grid
    auto simpson = [&](int n, double rr) {
        auto f = [&](double t) {
            if (t <= 0.0 || t >= rr) return 0.0;
            const double lam = 4.0 / ((1.0 - t * t) * (1.0 - t * t));
            return std::log(rr / t) / kPi * (-0.5) * lam * 2.0 * kTwoPi * t / 2.0;
        };
        double acc = 0.0;
        const double h = rr / n;
        for (int i = 0; i < n; ++i)
            acc += h / 6.0 * (f(i * h) + 4.0 * f((i + 0.5) * h) + f((i + 1) * h));
        return acc;
    };
    const double coarse = simpson(4000, r) - simpson(4000, r0);
    const double fine = simpson(40000, r) - simpson(40000, r0);
    CHECK(value == doctest::Approx(fine).epsilon(1e-4));
    CHECK(std::abs(fine - coarse) < 1e-4 * std::abs(fine) + 1e-8);
}

TEST_CASE("ricci characteristic is nonincreasing in r for K <= 0") {
    const SurfaceModel poincare = make_poincare_disc();
    double prev = 0.0;
    bool first = true;
    for (double r : {0.2, 0.35, 0.5, 0.65, 0.8, 0.92}) {
        const double v = ricci_characteristic(poincare, 0.1, r, 1e-9);
        if (!first) CHECK(v <= prev + 1e-9);
        prev = v;
        first = false;
    }
}

TEST_CASE("ricci characteristic respects the curvature-bound floor") {
    const SurfaceModel poincare = make_poincare_disc();
    const double r0 = 0.5; // default base radius of the unit disc
    for (double r : {0.55, 0.65, 0.75, 0.85, 0.95}) {
        const double v = ricci_characteristic(poincare, r0, r, 1e-9);
        const double inf_norm = form_norm_extrema(poincare, r).first;
        CHECK(v >= -1.0 * r * r / (4.0 * inf_norm) - 1e-6);
    }
}

TEST_CASE("form norm extrema") {
    const SurfaceModel flat = make_euclidean_disc();
    const auto [lo, hi] = form_norm_extrema(flat, 0.7);
    CHECK(lo == doctest::Approx(1.0));
    CHECK(hi == doctest::Approx(1.0));

    const SurfaceModel poincare = make_poincare_disc();
    const auto [plo, phi] = form_norm_extrema(poincare, 0.9);
    CHECK(plo == doctest::Approx((1.0 - 0.81) / 2.0).epsilon(1e-3));
    CHECK(phi == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("form integration along polylines") {
    const ChartPresentation id = make_identity_chart(10.0);
    CHECK(std::abs(integrate_form(id, {Complex{0, 0}, Complex{1, 1}}) - Complex{1, 1}) <
          1e-10);
    CHECK(std::abs(integrate_form(
              id, {Complex{0, 0}, Complex{1, 0}, Complex{0.3, 0.9}, Complex{0, 0}})) < 1e-10);

    const ChartPresentation half = make_halfplane_chart();
    // L(z) = z/(1-z): the path 0 -> 1/2 integrates to 1
    const Complex v = integrate_form(half, {Complex{0, 0}, Complex{0.5, 0.0}});
    CHECK(std::abs(v - Complex{1.0, 0.0}) < 1e-9);
    // quadrature agrees with the closed form at a generic endpoint
    const Complex z{0.31, -0.42};
    CHECK(std::abs(integrate_form(half, {Complex{0, 0}, z}) - half.period_map(z)) < 1e-9);
}

TEST_CASE("period map inversion by continuation matches the closed inverse") {
    const ChartPresentation half = make_halfplane_chart();
    for (const Complex w : {Complex{0.2, 0.1}, Complex{3.0, -2.0}, Complex{-2.0, 0.3},
                            Complex{-5.0, -1.0}, Complex{40.0, 10.0}}) {
        const Complex z = half.invert_period_map(w);
        CHECK(std::abs(z - w / (1.0 + w)) < 1e-9 * (1.0 + std::abs(z)));
    }
}

TEST_CASE("exhaustion classification of the built-in charts") {
    const ChartPresentation id_plane = make_identity_chart(1.0);
    // unit disc with phi = 1: hyperbolic, the large disc exhausts it
    const ExhaustionReport disc = exhaustion_check(id_plane, {0.5, 0.9, 2.0});
    CHECK(disc.classification == "hyperbolic");
    CHECK(disc.s_radius_estimate == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(disc.univalent);
    CHECK(disc.radii[0].contained);
    CHECK(disc.radii[0].nested);
    CHECK(disc.radii[1].nested);

    const ExhaustionReport half = exhaustion_check(make_halfplane_chart(), {1.0, 10.0, 100.0});
    CHECK(half.classification == "parabolic");
    CHECK(std::isinf(half.s_radius_estimate));
    CHECK(half.univalent);
    for (const auto& rr : half.radii) CHECK(rr.nested);
}

TEST_CASE("weak laplace identity: green function is harmonic off the pole") {
    // 50 random C^2 bumps supported in an annulus away from 0 and the
    // boundary; int g_r (Delta u) dA must vanish.
    const double r = 2.0;
    PathRng rng(2024, 1);
    for (int trial = 0; trial < 50; ++trial) {
        const double t0 = 0.2 + 0.5 * rng.next_uniform();
        const double t1 = t0 + 0.3 + (1.9 - t0 - 0.3) * rng.next_uniform() * 0.9;
        const int k = 1 + static_cast<int>(rng.next_uniform() * 3.0);
        const double a0 = rng.next_uniform() * 2 - 1;
        const double a1 = rng.next_uniform() * 2 - 1;
        const double b1 = rng.next_uniform() * 2 - 1;
        const double h = t1 - t0;
        auto bump = [&](double t, double& B, double& dB, double& ddB) {
            const double x = (t - t0) / h;
            if (x <= 0.0 || x >= 1.0) {
                B = dB = ddB = 0.0;
                return;
            }
            const double s = x - x * x;
            const double ds = 1.0 - 2.0 * x;
            B = s * s * s;
            dB = 3.0 * s * s * ds / h;
            ddB = (6.0 * s * ds * ds - 6.0 * s * s) / (h * h);
        };
        auto lap_u = [&](const Complex& w) {
            const double t = std::abs(w);
            double B, dB, ddB;
            bump(t, B, dB, ddB);
            if (B == 0.0 && dB == 0.0 && ddB == 0.0) return 0.0;
            const double th = std::arg(w);
            const double ang = a0 + a1 * std::cos(k * th) + b1 * std::sin(k * th);
            const double ang2 = -k * k * (a1 * std::cos(k * th) + b1 * std::sin(k * th));
            return (ddB + dB / t) * ang + B * ang2 / (t * t);
        };
        const QuadResult q = disc_integral(
            lap_u, [&](double t) { return t <= 0.0 ? 0.0 : std::log(r / t) / kPi; }, r, 1e-8,
            nullptr, {t0, t1});
        CHECK(std::abs(q.value) < 1e-6);
    }
}
