#include "nevlab/quadrature.hpp"
#include "nevlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace nevlab {

namespace {

// Gauss 7 / Kronrod 15 pair on [-1,1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resg = 0.0, resk = 0.0;
    const double fc = f(c);
    ++evals;
    resk = kWgk[7] * fc;
    resg = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = h * kXgk[i];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        evals += 2;
        resk += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * h;
    const double diff = std::abs((resk - resg) * h);
    // the (200*diff)^1.5 sharpening of QUADPACK is overkill here
    p.error = diff;
    return p;
}

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, double abs_tol,
                              int max_intervals, bool throw_on_failure) {
    QuadResult res;
    if (a == b) return res;
    const int init = std::clamp(static_cast<int>(std::ceil(std::abs(b - a) / 0.5)), 4, 32);

    std::priority_queue<Panel> heap;
    double total = 0.0, toterr = 0.0;
    for (int i = 0; i < init; ++i) {
        const double x0 = a + (b - a) * i / init;
        const double x1 = a + (b - a) * (i + 1) / init;
        Panel p = gk15(f, x0, x1, res.evaluations);
        total += p.value;
        toterr += p.error;
        heap.push(p);
    }
    int n = init;
    while (toterr > abs_tol && n < max_intervals) {
        Panel worst = heap.top();
        heap.pop();
        total -= worst.value;
        toterr -= worst.error;
        const double m = 0.5 * (worst.a + worst.b);
        if (m == worst.a || m == worst.b) {
            // interval exhausted at machine precision, keep its estimate
            total += worst.value;
            toterr += worst.error;
            break;
        }
        Panel left = gk15(f, worst.a, m, res.evaluations);
        Panel right = gk15(f, m, worst.b, res.evaluations);
        total += left.value + right.value;
        toterr += left.error + right.error;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    res.value = total;
    res.error_estimate = toterr;
    res.converged = toterr <= abs_tol;
    if (!res.converged && throw_on_failure)
        throw NumericError("adaptive quadrature did not converge", toterr);
    return res;
}

QuadResult integrate_tanh_sinh(const std::function<double(double)>& f,
                               double a, double b, double abs_tol, int max_level) {
    QuadResult res;
    if (a == b) return res;
    const double c = 0.5 * (a + b);
    const double h0 = 0.5 * (b - a);
    const double tmax = 6.1; // tanh(pi/2*sinh(6.1)) is 1 within 1e-300

    auto node = [&](double t, double& x, double& w) {
        const double s = std::sinh(t);
        const double ch = std::cosh(t);
        const double u = std::tanh(0.5 * kPi * s);
        x = c + h0 * u;
        const double sech = 1.0 / std::cosh(0.5 * kPi * s);
        w = h0 * 0.5 * kPi * ch * sech * sech;
    };

    double step = 1.0;
    double sum = 0.0;
    {
        double x, w;
        node(0.0, x, w);
        sum = f(x) * w;
        ++res.evaluations;
        for (double t = step; t <= tmax; t += step) {
            double xm, wm, xp, wp;
            node(-t, xm, wm);
            node(t, xp, wp);
            if (xm > a) { sum += f(xm) * wm; ++res.evaluations; }
            if (xp < b) { sum += f(xp) * wp; ++res.evaluations; }
        }
    }
    double prev = sum * step;
    for (int lvl = 1; lvl <= max_level; ++lvl) {
        step *= 0.5;
        double add = 0.0;
        for (double t = step; t <= tmax; t += 2.0 * step) {
            double xm, wm, xp, wp;
            node(-t, xm, wm);
            node(t, xp, wp);
            if (xm > a) { add += f(xm) * wm; ++res.evaluations; }
            if (xp < b) { add += f(xp) * wp; ++res.evaluations; }
        }
        sum += add;
        const double cur = sum * step;
        const double diff = std::abs(cur - prev);
        prev = cur;
        if (lvl >= 3 && diff <= abs_tol) {
            res.value = cur;
            res.error_estimate = diff;
            res.converged = true;
            return res;
        }
    }
    res.value = prev;
    res.error_estimate = std::abs(prev) * 1e-8 + abs_tol;
    res.converged = false;
    return res;
}

QuadResult circle_average(const std::function<double(double)>& f,
                          double abs_tol, std::vector<CircleSplit> splits,
                          int max_intervals_per_segment) {
    // Normalise split angles into [0, 2pi) and sort.
    for (auto& s : splits) {
        s.angle = std::fmod(s.angle, kTwoPi);
        if (s.angle < 0) s.angle += kTwoPi;
    }
    std::sort(splits.begin(), splits.end(),
              [](const CircleSplit& x, const CircleSplit& y) { return x.angle < y.angle; });
    // Deduplicate near-coincident splits.
    std::vector<CircleSplit> uniq;
    for (const auto& s : splits) {
        if (uniq.empty() || s.angle - uniq.back().angle > 1e-12)
            uniq.push_back(s);
        else
            uniq.back().singular = uniq.back().singular || s.singular;
    }
    if (uniq.empty()) uniq.push_back({0.0, false});

    QuadResult total;
    const int nseg = static_cast<int>(uniq.size());
    const double seg_tol = abs_tol * kTwoPi / std::max(1, nseg);
    for (int i = 0; i < nseg; ++i) {
        const CircleSplit& s0 = uniq[i];
        const CircleSplit& s1 = uniq[(i + 1) % nseg];
        const double a = s0.angle;
        const double b = (i + 1 < nseg) ? s1.angle : uniq[0].angle + kTwoPi;
        if (b - a < 1e-14) continue;
        QuadResult part;
        if (s0.singular || s1.singular) {
            part = integrate_tanh_sinh(f, a, b, seg_tol);
            if (!part.converged) {
                // fall back to the adaptive rule before giving up
                QuadResult retry = integrate_adaptive(f, a, b, seg_tol,
                                                      max_intervals_per_segment, false);
                if (retry.error_estimate < part.error_estimate) part = retry;
            }
        } else {
            part = integrate_adaptive(f, a, b, seg_tol, max_intervals_per_segment, false);
        }
        total.value += part.value;
        total.error_estimate += part.error_estimate;
        total.evaluations += part.evaluations;
        total.converged = total.converged && part.converged;
    }
    if (!total.converged && total.error_estimate > abs_tol * kTwoPi)
        throw NumericError("circle average did not converge", total.error_estimate / kTwoPi);
    total.value /= kTwoPi;
    total.error_estimate /= kTwoPi;
    total.converged = true;
    return total;
}

namespace {

// Angular integral of g over the full circle of radius t.
double ring_integral(const std::function<double(const Complex&)>& g, double t,
                     double tol,
                     const std::function<std::vector<double>(double)>& angular_hints,
                     long& evals) {
    std::vector<CircleSplit> splits;
    if (angular_hints) {
        for (double a : angular_hints(t)) splits.push_back({a, false});
    }
    auto f = [&](double th) { return g(Complex(t * std::cos(th), t * std::sin(th))); };
    QuadResult q = circle_average(f, tol / kTwoPi, std::move(splits));
    evals += q.evaluations;
    return q.value * kTwoPi;
}

} // namespace

QuadResult disc_integral(const std::function<double(const Complex&)>& g,
                         const std::function<double(double)>& radial_weight,
                         double r, double abs_tol,
                         const std::function<std::vector<double>(double)>& angular_hints,
                         const std::vector<double>& radial_breaks) {
    QuadResult res;
    if (r <= 0.0) return res;
    // Budget: half the tolerance to the radial rule, half to the rings.
    double wmass = 0.0;
    {
        auto wf = [&](double t) { return std::abs(radial_weight(t)) * t; };
        wmass = integrate_adaptive(wf, 0.0, r, 0.01 * std::abs(r) + 1e-12, 400, false).value;
    }
    const double ring_tol = 0.5 * abs_tol / std::max(wmass, 1e-12);
    auto radial = [&](double t) {
        return radial_weight(t) * t * ring_integral(g, t, ring_tol, angular_hints, res.evaluations);
    };
    std::vector<double> pts{0.0};
    for (double b : radial_breaks)
        if (b > 1e-15 && b < r) pts.push_back(b);
    pts.push_back(r);
    std::sort(pts.begin(), pts.end());
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        QuadResult part = integrate_adaptive(radial, pts[i], pts[i + 1],
                                             0.5 * abs_tol / (pts.size() - 1), 2000, false);
        res.value += part.value;
        res.error_estimate += part.error_estimate;
        res.converged = res.converged && part.converged;
    }
    if (!res.converged && res.error_estimate > abs_tol)
        throw NumericError("disc integral did not converge", res.error_estimate);
    res.converged = true;
    return res;
}

QuadResult disc_integral_log_weight(const std::function<double(const Complex&)>& g,
                                    double r, double abs_tol,
                                    const std::function<std::vector<double>(double)>& angular_hints) {
    QuadResult res;
    if (r <= 0.0) return res;
    // t = r*exp(-s) turns log(r/t)*t dt into r^2 * s * exp(-2s) ds.
    const double smax = 40.0;
    const double wmass = r * r * 0.25; // integral of r^2 s e^{-2s}
    const double ring_tol = 0.5 * abs_tol / std::max(wmass, 1e-12);
    auto radial = [&](double s) {
        const double t = r * std::exp(-s);
        return r * r * s * std::exp(-2.0 * s) *
               ring_integral(g, t, ring_tol, angular_hints, res.evaluations);
    };
    QuadResult part = integrate_adaptive(radial, 0.0, smax, 0.5 * abs_tol, 2000, false);
    res.value = part.value;
    res.error_estimate = part.error_estimate;
    res.converged = part.converged;
    if (!res.converged && res.error_estimate > abs_tol)
        throw NumericError("log-weighted disc integral did not converge", res.error_estimate);
    res.converged = true;
    return res;
}

QuadResult height_integral(const std::function<double(const Complex&)>& g,
                           double r0, double r, double abs_tol,
                           const std::function<std::vector<double>(double)>& angular_hints) {
    QuadResult res;
    if (r == r0) return res;
    if (!(0.0 < r0 && r0 < r)) throw DomainError("height integral needs 0 < r0 < r");
    // inner disc carries the constant weight log(r/r0)
    const QuadResult inner = disc_integral(
        g, [](double) { return 1.0; }, r0, 0.4 * abs_tol / std::log(r / r0), angular_hints);
    res.evaluations += inner.evaluations;
    // annulus: the weight log(r/t) is smooth for t >= r0
    const double wmass =
        0.25 * r * r - 0.5 * r0 * r0 * std::log(r / r0) - 0.25 * r0 * r0;
    const double ring_tol = 0.3 * abs_tol / std::max(wmass, 1e-12);
    auto radial = [&](double t) {
        std::vector<CircleSplit> splits;
        if (angular_hints)
            for (double h : angular_hints(t)) splits.push_back({h, false});
        auto ftheta = [&](double th) { return g(Complex(t * std::cos(th), t * std::sin(th))); };
        const QuadResult q = circle_average(ftheta, ring_tol / kTwoPi, std::move(splits));
        res.evaluations += q.evaluations;
        return std::log(r / t) * t * q.value * kTwoPi;
    };
    const QuadResult annulus = integrate_adaptive(radial, r0, r, 0.3 * abs_tol, 2000, false);
    if (!annulus.converged && annulus.error_estimate > abs_tol)
        throw NumericError("height integral did not converge", annulus.error_estimate);
    res.value = std::log(r / r0) * inner.value + annulus.value;
    res.error_estimate = inner.error_estimate * std::log(r / r0) + annulus.error_estimate;
    res.converged = true;
    return res;
}

Complex integrate_polyline(const std::function<Complex(const Complex&)>& phi,
                           const std::vector<Complex>& points,
                           double abs_tol, double* error_estimate) {
    if (points.size() < 2) throw DomainError("polyline needs at least two points");
    Complex total{0.0, 0.0};
    double err = 0.0;
    const double seg_tol = abs_tol / static_cast<double>(points.size() - 1);
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        const Complex z0 = points[i];
        const Complex dz = points[i + 1] - points[i];
        auto re = [&](double s) { return std::real(phi(z0 + s * dz) * dz); };
        auto im = [&](double s) { return std::imag(phi(z0 + s * dz) * dz); };
        QuadResult qr = integrate_adaptive(re, 0.0, 1.0, 0.5 * seg_tol);
        QuadResult qi = integrate_adaptive(im, 0.0, 1.0, 0.5 * seg_tol);
        total += Complex(qr.value, qi.value);
        err += qr.error_estimate + qi.error_estimate;
    }
    if (error_estimate) *error_estimate = err;
    return total;
}

} // namespace nevlab
