#include "nevlab/errors.hpp"
#include "nevlab/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace nevlab;

TEST_CASE("adaptive rule nails smooth closed forms") {
    auto q = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
    CHECK(q.value == doctest::Approx(2.0).epsilon(1e-12));
    auto p = integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, 1e-12);
    CHECK(p.value == doctest::Approx(kPi / 4.0).epsilon(1e-12));
}

TEST_CASE("adaptive rule survives an endpoint log singularity") {
    // int_0^1 log(1/x) dx = 1
    auto q = integrate_adaptive([](double x) { return std::log(1.0 / x); }, 0.0, 1.0, 1e-10);
    CHECK(q.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("tanh-sinh handles log singularities at both ends") {
    auto q = integrate_tanh_sinh([](double x) { return std::log(1.0 / x); }, 0.0, 1.0, 1e-12);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(1.0).epsilon(1e-11));
    // int_0^1 log(1/(x(1-x))) dx = 2
    auto p = integrate_tanh_sinh(
        [](double x) { return std::log(1.0 / (x * (1.0 - x))); }, 0.0, 1.0, 1e-12);
    CHECK(p.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("circle average is exactly normalized") {
    auto q = circle_average([](double) { return 3.25; }, 1e-13);
    CHECK(q.value == doctest::Approx(3.25).epsilon(1e-14));
}

TEST_CASE("circle average kills odd harmonics") {
    auto q = circle_average([](double th) { return std::cos(th); }, 1e-12);
    CHECK(std::abs(q.value) < 1e-12);
}

TEST_CASE("mean of log|e^{i t} - a| vanishes for |a| < 1") {
    // the mean value property of the harmonic function log|w - a|
    for (double a : {0.3, 0.7, 0.95}) {
        auto q = circle_average(
            [a](double th) {
                const Complex w(std::cos(th), std::sin(th));
                return std::log(std::abs(w - a));
            },
            1e-10);
        CHECK(std::abs(q.value) < 1e-9);
    }
}

TEST_CASE("circle average integrates an on-circle log spike when flagged") {
    // integrand log|e^{i th} - e^{i 0.5}|: singular at th = 0.5,
    // mean value 0 by the same harmonic argument (boundary limit)
    std::vector<CircleSplit> splits{{0.5, true}};
    auto q = circle_average(
        [](double th) {
            const Complex w(std::cos(th), std::sin(th));
            const Complex a(std::cos(0.5), std::sin(0.5));
            const double d = std::abs(w - a);
            return d == 0.0 ? 0.0 : std::log(d);
        },
        1e-9, splits);
    CHECK(std::abs(q.value) < 1e-7);
}

TEST_CASE("disc integral with unit weight recovers areas") {
    auto q = disc_integral([](const Complex&) { return 1.0; },
                           [](double) { return 1.0; }, 2.0, 1e-10);
    CHECK(q.value == doctest::Approx(4.0 * kPi).epsilon(1e-10));
    // int_{|w|<r} |w|^2 dA = pi r^4 / 2
    auto p = disc_integral([](const Complex& w) { return std::norm(w); },
                           [](double) { return 1.0; }, 1.5, 1e-10);
    CHECK(p.value == doctest::Approx(kPi * std::pow(1.5, 4) / 2.0).epsilon(1e-10));
}

TEST_CASE("log-weighted disc integral matches the closed form") {
    // int_{|w|<r} log(r/|w|) dA = pi r^2 / 2
    for (double r : {0.5, 1.0, 3.0}) {
        auto q = disc_integral_log_weight([](const Complex&) { return 1.0; }, r, 1e-10);
        CHECK(q.value == doctest::Approx(kPi * r * r / 2.0).epsilon(1e-9));
    }
}

TEST_CASE("height integral equals the nested double integral") {
    // g = |w|^2: inner area integral A(t) = pi t^4/2, so
    // int_{r0}^{r} A(t)/t dt = pi (r^4 - r0^4) / 8
    const double r0 = 0.5, r = 2.0;
    auto q = height_integral([](const Complex& w) { return std::norm(w); }, r0, r, 1e-10);
    const double expect = kPi * (std::pow(r, 4) - std::pow(r0, 4)) / 8.0;
    CHECK(q.value == doctest::Approx(expect).epsilon(1e-9));

    // independent route: adaptive quadrature of the nested form
    auto nested = integrate_adaptive(
        [](double t) { return kPi * std::pow(t, 4) / 2.0 / t; }, r0, r, 1e-12);
    CHECK(q.value == doctest::Approx(nested.value).epsilon(1e-9));
}

TEST_CASE("polyline integration is exact for entire forms") {
    auto one = [](const Complex&) { return Complex{1.0, 0.0}; };
    const Complex end{1.0, 1.0};
    CHECK(std::abs(integrate_polyline(one, {Complex{0, 0}, end}, 1e-12) - end) < 1e-12);

    // closed triangle: exact forms integrate to zero
    const Complex z = integrate_polyline(
        one, {Complex{0, 0}, Complex{1, 0}, Complex{0.5, 0.8}, Complex{0, 0}}, 1e-12);
    CHECK(std::abs(z) < 1e-12);
}

TEST_CASE("nonconvergent quadrature reports the achieved tolerance") {
    // an oscillatory integrand with an absurd tolerance and tiny budget
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sin(1e6 * x); }, 0.0, 10.0,
                                       1e-300, 8),
                    NumericError);
}
