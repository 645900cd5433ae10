#include "nevlab/zeros.hpp"
#include "nevlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace nevlab {

namespace {

constexpr double kHalfPi = 0.5 * kPi;

// Adaptive phase tracker along a parametrized curve.  A step is accepted
// only when (a) both half-increments stay under pi/2 and agree with the
// endpoint increment, and (b) the phase rate |f'/f| |curve'| sampled at
// the midpoint bounds the true step change under pi/2.  The rate test is
// what rules out symmetric aliasing (e^{i omega s} advancing by whole
// turns between samples).  Magnitudes may legitimately span many orders
// along one curve; only exact zeros and depth exhaustion next to locally
// vanishing values count as contour hits.
class PhaseTracker {
public:
    PhaseTracker(std::function<Complex(double)> value, std::function<double(double)> rate)
        : g_(std::move(value)), rate_(std::move(rate)) {}

    double total(double s0, double s1, int init_panels) {
        double acc = 0.0;
        Complex prev = probe(s0);
        double sprev = s0;
        for (int i = 1; i <= init_panels; ++i) {
            const double s = s0 + (s1 - s0) * i / init_panels;
            const Complex cur = probe(s);
            acc += sweep(sprev, s, prev, cur, 0);
            prev = cur;
            sprev = s;
        }
        return acc;
    }

private:
    std::function<Complex(double)> g_;
    std::function<double(double)> rate_;
    double scale_ = 0.0; // largest magnitude seen on this curve
    static constexpr int kMaxDepth = 48;

    Complex probe(double s) {
        const Complex v = g_(s);
        const double m = std::abs(v);
        if (m == 0.0 || !std::isfinite(m))
            throw ContourZeroError("zero of tracked function on the contour");
        scale_ = std::max(scale_, m);
        return v;
    }

    double sweep(double s0, double s1, const Complex& v0, const Complex& v1, int depth) {
        if (depth >= kMaxDepth) {
            // at this resolution an untrackable phase next to locally
            // vanishing values is a zero sitting on the curve
            // at this resolution an untrackable phase means a zero on
            // the curve, either relative to the curve's scale or in
            // absolute terms (tracked brackets are renormalized to O(1),
            // so values near 1e-13 are rounding noise)
            const double local = std::min(std::abs(v0), std::abs(v1));
            if (local < std::max(1e-6 * scale_, 1e-13))
                throw ContourZeroError("zero of tracked function on the contour");
            throw NumericError("phase-tracking step underflow", std::abs(s1 - s0));
        }
        const double sm = 0.5 * (s0 + s1);
        const Complex vm = probe(sm);
        const double d1 = std::arg(vm / v0);
        const double d2 = std::arg(v1 / vm);
        const double direct = std::arg(v1 / v0);
        if (std::abs(d1) < kHalfPi && std::abs(d2) < kHalfPi &&
            std::abs(d1 + d2 - direct) < 1e-9 &&
            rate_(sm) * (s1 - s0) < kHalfPi)
            return d1 + d2;
        return sweep(s0, sm, v0, vm, depth + 1) + sweep(sm, s1, vm, v1, depth + 1);
    }
};

// Phase rate of fn along the segment a + s(b - a).
std::function<double(double)> segment_rate(const AnalyticFunction& fn, Complex a, Complex b) {
    return [fn, a, b](double s) {
        const Complex w = a + s * (b - a);
        const Complex v = fn.f(w);
        const double mv = std::abs(v);
        if (mv == 0.0) return std::numeric_limits<double>::infinity();
        Complex d;
        if (fn.df) {
            d = fn.df(w);
        } else {
            const double h = 1e-7 * std::max(1.0, std::abs(w));
            d = (fn.f(w + h) - fn.f(w - h)) / (2.0 * h);
        }
        return std::abs(d) / mv * std::abs(b - a);
    };
}

std::function<double(double)> circle_rate(const AnalyticFunction& fn, double r) {
    return [fn, r](double s) {
        const Complex w(r * std::cos(kTwoPi * s), r * std::sin(kTwoPi * s));
        const Complex v = fn.f(w);
        const double mv = std::abs(v);
        if (mv == 0.0) return std::numeric_limits<double>::infinity();
        Complex d;
        if (fn.df) {
            d = fn.df(w);
        } else {
            const double h = 1e-7 * std::max(1.0, std::abs(w));
            d = (fn.f(w + h) - fn.f(w - h)) / (2.0 * h);
        }
        return std::abs(d) / mv * kTwoPi * r;
    };
}

int round_winding(double total_phase) {
    const double turns = total_phase / kTwoPi;
    const double nearest = std::round(turns);
    if (std::abs(turns - nearest) > 1e-6)
        throw NumericError("winding number did not close to an integer",
                           std::abs(turns - nearest));
    return static_cast<int>(nearest);
}

Complex derivative_of(const AnalyticFunction& fn, Complex w) {
    if (fn.df) return fn.df(w);
    const double h = 1e-7 * std::max(1.0, std::abs(w));
    return (fn.f(w + h) - fn.f(w - h)) / (2.0 * h);
}

// Polar-cell subdivision of the disc: a centre disc plus annular
// sectors.  Cells never leave {|w| <= r}, so maps defined only on a disc
// stay inside their domain.
class Subdivider {
public:
    Subdivider(const AnalyticFunction& fn, double r, double tol)
        : fn_(fn), r_(r), tol_(std::max(tol, 1e-13)) {}

    std::vector<ZeroRecord> run() {
        const int wind = disc_winding(r_);
        process_disc(r_, wind, 0);
        return records_;
    }

private:
    const AnalyticFunction& fn_;
    double r_, tol_;
    std::vector<ZeroRecord> records_;
    static constexpr int kMaxDepth = 72;
    static constexpr double kJitter[6] = {0.0, 0.11, -0.07, 0.23, -0.19, 0.31};

    Complex at(double t, double a) const {
        return Complex(t * std::cos(a), t * std::sin(a));
    }

    // Brackets are renormalized to O(1), so boundary values below this
    // level are double-precision noise: windings measured there are
    // meaningless and the cell is an unresolvable cluster.
    static constexpr double kNoiseFloor = 1e-11;

    double boundary_scale(double t0, double t1, double a0, double a1) const {
        double m = 0.0;
        for (int i = 0; i < 6; ++i) {
            const double a = a0 + (a1 - a0) * (i + 0.5) / 6.0;
            m = std::max(m, std::abs(fn_.f(at(t1, a))));
            if (t0 > 0.0) m = std::max(m, std::abs(fn_.f(at(t0, a))));
        }
        for (int i = 0; i < 4; ++i) {
            const double t = t0 + (t1 - t0) * (i + 0.5) / 4.0;
            m = std::max(m, std::abs(fn_.f(at(t, a0))));
            m = std::max(m, std::abs(fn_.f(at(t, a1))));
        }
        return m;
    }

    int disc_winding(double t) const {
        PhaseTracker tracker(
            [&](double s) { return fn_.f(at(t, kTwoPi * s)); }, circle_rate(fn_, t));
        return round_winding(tracker.total(0.0, 1.0, 16));
    }

    double arc_phase(double t, double a0, double a1) const {
        auto rate = [&](double s) {
            const Complex w = at(t, a0 + s * (a1 - a0));
            const Complex v = fn_.f(w);
            const double mv = std::abs(v);
            if (mv == 0.0) return std::numeric_limits<double>::infinity();
            Complex d;
            if (fn_.df) {
                d = fn_.df(w);
            } else {
                const double h = 1e-7 * std::max(1.0, std::abs(w));
                d = (fn_.f(w + h) - fn_.f(w - h)) / (2.0 * h);
            }
            return std::abs(d) / mv * t * std::abs(a1 - a0);
        };
        PhaseTracker tracker([&](double s) { return fn_.f(at(t, a0 + s * (a1 - a0))); }, rate);
        return tracker.total(0.0, 1.0, 4);
    }

    double radial_phase(double a, double t0, double t1) const {
        const Complex p0 = at(t0, a), p1 = at(t1, a);
        PhaseTracker tracker([&](double s) { return fn_.f(p0 + s * (p1 - p0)); },
                             segment_rate(fn_, p0, p1));
        return tracker.total(0.0, 1.0, 4);
    }

    // Boundary winding of the sector [t0, t1] x [a0, a1], t0 > 0.
    int sector_winding(double t0, double t1, double a0, double a1) const {
        const double total = arc_phase(t1, a0, a1) + radial_phase(a1, t1, t0) -
                             arc_phase(t0, a0, a1) + radial_phase(a0, t0, t1);
        return round_winding(total);
    }

    void process_disc(double t1, int wind, int depth) {
        if (wind == 0) return;
        if (2.0 * t1 < tol_ || depth >= kMaxDepth ||
            boundary_scale(0.5 * t1, t1, 0.0, kTwoPi) < kNoiseFloor) {
            finalize(Complex{0.0, 0.0}, 2.0 * t1, wind);
            return;
        }
        for (int attempt = 0; attempt < 6; ++attempt) {
            const double tm = t1 * (0.5 + 0.25 * kJitter[attempt]);
            const double base = 0.3 + kJitter[attempt];
            try {
                const int wc = disc_winding(tm);
                int winds[4];
                int sum = wc;
                for (int k = 0; k < 4; ++k) {
                    winds[k] = sector_winding(tm, t1, base + k * kHalfPi,
                                              base + (k + 1) * kHalfPi);
                    sum += winds[k];
                }
                if (sum != wind)
                    throw NumericError("winding split inconsistency",
                                       std::abs(static_cast<double>(sum - wind)));
                process_disc(tm, wc, depth + 1);
                for (int k = 0; k < 4; ++k)
                    process_sector(tm, t1, base + k * kHalfPi, base + (k + 1) * kHalfPi,
                                   winds[k], depth + 1);
                return;
            } catch (const ContourZeroError&) {
                if (attempt == 5) throw;
            }
        }
    }

    void process_sector(double t0, double t1, double a0, double a1, int wind, int depth) {
        if (wind == 0) return;
        const double diam = std::hypot(t1 - t0, t1 * (a1 - a0));
        if (diam < tol_ || depth >= kMaxDepth ||
            boundary_scale(t0, t1, a0, a1) < kNoiseFloor) {
            finalize(at(0.5 * (t0 + t1), 0.5 * (a0 + a1)), diam, wind);
            return;
        }
        for (int attempt = 0; attempt < 6; ++attempt) {
            const double tm = t0 + (t1 - t0) * (0.5 + 0.25 * kJitter[attempt]);
            const double am = a0 + (a1 - a0) * (0.5 + 0.25 * kJitter[attempt]);
            try {
                const int w00 = sector_winding(t0, tm, a0, am);
                const int w01 = sector_winding(t0, tm, am, a1);
                const int w10 = sector_winding(tm, t1, a0, am);
                const int w11 = sector_winding(tm, t1, am, a1);
                if (w00 + w01 + w10 + w11 != wind)
                    throw NumericError("winding split inconsistency",
                                       std::abs(static_cast<double>(w00 + w01 + w10 + w11 - wind)));
                process_sector(t0, tm, a0, am, w00, depth + 1);
                process_sector(t0, tm, am, a1, w01, depth + 1);
                process_sector(tm, t1, a0, am, w10, depth + 1);
                process_sector(tm, t1, am, a1, w11, depth + 1);
                return;
            } catch (const ContourZeroError&) {
                if (attempt == 5) throw;
            }
        }
    }

    void finalize(Complex center, double diam, int wind) {
        const Complex x = newton_polish(center, wind, diam);
        if (!(std::abs(x) < r_)) return;
        ZeroRecord rec;
        rec.location = x;
        rec.multiplicity = wind;
        rec.residual = std::abs(fn_.f(x));
        rec.cluster = false;
        if (wind > 1) {
            // A genuine m-fold root keeps its full winding inside a tiny
            // square at every scale; an unresolved cluster loses members,
            // and noise-dominated values disagree between scales.  Two
            // consistent measurements equal to the cell winding certify a
            // genuine multiple root.
            auto tiny_winding = [&](double e) {
                try {
                    return winding_number_rect(fn_, x.real() - e, x.imag() - e,
                                               x.real() + e, x.imag() + e);
                } catch (const ContourZeroError&) {
                    return -1;
                } catch (const NumericError&) {
                    return -1;
                }
            };
            const double eps = 1e-8 * std::max(1.0, std::abs(x));
            const int w1 = tiny_winding(eps);
            const int w2 = tiny_winding(4.0 * eps);
            rec.cluster = !(w1 == wind && w2 == wind);
        }
        records_.push_back(rec);
    }

    Complex newton_polish(Complex start, int multiplicity, double locality) const {
        Complex x = start;
        Complex best = start;
        double best_resid;
        try {
            best_resid = std::abs(fn_.f(start));
        } catch (const std::exception&) {
            return start;
        }
        for (int it = 0; it < 60; ++it) {
            try {
                const Complex fx = fn_.f(x);
                const double afx = std::abs(fx);
                if (afx < best_resid) {
                    best_resid = afx;
                    best = x;
                }
                if (afx == 0.0) return x;
                const Complex d = derivative_of(fn_, x);
                if (!(std::abs(d) > 0.0) || !std::isfinite(std::abs(d))) break;
                Complex step = fx / d;
                if (multiplicity > 1) step *= static_cast<double>(multiplicity);
                x -= step;
                if (std::abs(x - start) > 4.0 * locality + 1e-12) break; // escaped the cell
                if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
            } catch (const std::exception&) {
                break; // wandered outside the domain
            }
        }
        try {
            if (std::abs(fn_.f(x)) <= best_resid) return x;
        } catch (const std::exception&) {
        }
        return best;
    }
};

} // namespace

AnalyticFunction bracket_function(const MeromorphicMap& f, const SpherePoint& a) {
    AnalyticFunction fn;
    fn.f = [&f, a](Complex w) {
        const HomJet j = f.jet(w);
        return a.a0() * j.f1 - a.a1() * j.f0;
    };
    fn.df = [&f, a](Complex w) {
        const HomJet j = f.jet(w);
        return a.a0() * j.df1 - a.a1() * j.df0;
    };
    return fn;
}

AnalyticFunction wronskian_function(const MeromorphicMap& f) {
    AnalyticFunction fn;
    fn.f = [&f](Complex w) {
        const HomJet j = f.jet(w);
        return j.f0 * j.df1 - j.f1 * j.df0;
    };
    fn.df = nullptr; // no second derivatives; Newton falls back to differences
    return fn;
}

double resolve_contour_radius(const AnalyticFunction& fn, double r, double domain_radius) {
    double cur = r;
    for (int attempt = 0; attempt <= 3; ++attempt) {
        if (!(cur < domain_radius))
            throw DomainError("contour radius outside the map domain");
        // Distance of the nearest zero to the contour, estimated at the
        // samples by the Newton step |f| / |f'|.
        double min_dist = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 512; ++i) {
            const double th = kTwoPi * (i + 0.29) / 512.0;
            const Complex w(cur * std::cos(th), cur * std::sin(th));
            const double m = std::abs(fn.f(w));
            if (m == 0.0) {
                min_dist = 0.0;
                break;
            }
            const double d = std::abs(derivative_of(fn, w));
            if (d > 0.0 && std::isfinite(d)) min_dist = std::min(min_dist, m / d);
        }
        if (min_dist > 1e-9 * std::max(1.0, cur)) return cur;
        cur *= 1.0 + 1e-6;
    }
    throw ContourZeroError("zero on contour after three radius nudges");
}

int winding_number_circle(const AnalyticFunction& fn, double r) {
    PhaseTracker tracker(
        [&](double s) { return fn.f(Complex(r * std::cos(kTwoPi * s), r * std::sin(kTwoPi * s))); },
        circle_rate(fn, r));
    return round_winding(tracker.total(0.0, 1.0, 32));
}

int winding_number_rect(const AnalyticFunction& fn,
                        double x0, double y0, double x1, double y1) {
    auto edge = [&](Complex a, Complex b) {
        PhaseTracker tracker([&, a, b](double s) { return fn.f(a + s * (b - a)); },
                             segment_rate(fn, a, b));
        return tracker.total(0.0, 1.0, 4);
    };
    const Complex c00(x0, y0), c10(x1, y0), c11(x1, y1), c01(x0, y1);
    return round_winding(edge(c00, c10) + edge(c10, c11) + edge(c11, c01) + edge(c01, c00));
}

namespace {

// Runs `body` on the scan-resolved contour radius, nudging upward the
// same way the scan does whenever the tracker still hits a zero, so a
// count and a location of the same configuration stay consistent.
template <typename Body>
auto with_contour_nudges(const AnalyticFunction& fn, double r, double domain_radius,
                         Body&& body) {
    double cur = resolve_contour_radius(fn, r, domain_radius);
    for (int attempt = 0;; ++attempt) {
        try {
            return body(cur);
        } catch (const ContourZeroError&) {
            if (attempt >= 3 || !(cur * (1.0 + 1e-6) < domain_radius)) throw;
            cur *= 1.0 + 1e-6;
        }
    }
}

} // namespace

int count_zeros(const MeromorphicMap& f, const SpherePoint& a, double r) {
    if (f.is_constant()) throw DomainError("zero counting requires a nonconstant map");
    const AnalyticFunction fn = bracket_function(f, a);
    return with_contour_nudges(fn, r, f.domain_radius(), [&](double rr) {
        return winding_number_circle(fn, rr);
    });
}

std::vector<ZeroRecord> locate_zeros(const AnalyticFunction& fn, double r, double tol,
                                     double domain_radius) {
    std::vector<ZeroRecord> recs =
        with_contour_nudges(fn, r, domain_radius, [&](double rr) {
            Subdivider sub(fn, rr, tol);
            return sub.run();
        });
    std::sort(recs.begin(), recs.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
        if (std::abs(a.location) != std::abs(b.location))
            return std::abs(a.location) < std::abs(b.location);
        return std::arg(a.location) < std::arg(b.location);
    });
    return recs;
}

std::vector<ZeroRecord> locate_zeros(const MeromorphicMap& f, const SpherePoint& a,
                                     double r, double tol) {
    if (f.is_constant()) throw DomainError("zero location requires a nonconstant map");
    return locate_zeros(bracket_function(f, a), r, tol, f.domain_radius());
}

} // namespace nevlab
