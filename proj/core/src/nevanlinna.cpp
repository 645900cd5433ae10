#include "nevlab/nevanlinna.hpp"
#include "nevlab/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace nevlab {

double default_r0(double s_radius) {
    return s_radius > 2.0 ? 1.0 : 0.5 * s_radius;
}

TargetZeroSet tabulate_zeros(const MeromorphicMap& f, const SpherePoint& a,
                             double r_max, double zero_tol) {
    const AnalyticFunction fn = bracket_function(f, a);
    const double r_eff = resolve_contour_radius(fn, r_max, f.domain_radius());
    TargetZeroSet set;
    set.target = a;
    set.radius = r_eff;
    set.zeros = locate_zeros(fn, r_eff, zero_tol, f.domain_radius());
    return set;
}

double counting_from_records(const std::vector<ZeroRecord>& zeros,
                             double r0, double r, bool truncated) {
    if (!(0.0 < r0 && r0 < r)) throw DomainError("counting needs 0 < r0 < r");
    double acc = 0.0;
    for (const ZeroRecord& z : zeros) {
        const double t = std::abs(z.location);
        if (t > r) continue;
        const double mult = truncated ? 1.0 : static_cast<double>(z.multiplicity);
        acc += mult * std::log(r / std::max(t, r0));
    }
    return acc;
}

double counting(const MeromorphicMap& f, const SpherePoint& a,
                double r0, double r, double zero_tol) {
    const TargetZeroSet set = tabulate_zeros(f, a, r, zero_tol);
    return counting_from_records(set.zeros, r0, r, false);
}

double simple_counting(const MeromorphicMap& f, const SpherePoint& a,
                       double r0, double r, double zero_tol) {
    const TargetZeroSet set = tabulate_zeros(f, a, r, zero_tol);
    return counting_from_records(set.zeros, r0, r, true);
}

namespace {

// Split angles for the proximity integral: pre-located roots of the
// bracket on or near the circle, plus the map's own refinement hints.
std::vector<CircleSplit> proximity_splits(const MeromorphicMap& f, const SpherePoint& a,
                                          double r, const TargetZeroSet* zero_table) {
    std::vector<CircleSplit> splits;
    if (zero_table) {
        for (const ZeroRecord& z : zero_table->zeros) {
            const double t = std::abs(z.location);
            if (std::abs(t - r) < 0.05 * r)
                splits.push_back({std::arg(z.location), std::abs(t - r) < 1e-9 * r});
        }
    }
    for (double h : f.angular_hints(r)) splits.push_back({h, false});

    // On-circle scan for bracket minima the table may not cover.
    const AnalyticFunction fn = bracket_function(f, a);
    const int n = 512;
    std::vector<double> mag(n);
    double top = 0.0;
    for (int i = 0; i < n; ++i) {
        const double th = kTwoPi * i / n;
        mag[i] = std::abs(fn.f(Complex(r * std::cos(th), r * std::sin(th))));
        top = std::max(top, mag[i]);
    }
    for (int i = 0; i < n; ++i) {
        const double prev = mag[(i + n - 1) % n];
        const double next = mag[(i + 1) % n];
        if (mag[i] <= prev && mag[i] <= next && mag[i] < 1e-2 * top) {
            // local dip; refine by ternary search
            double lo = kTwoPi * (i - 1) / n, hi = kTwoPi * (i + 1) / n;
            for (int it = 0; it < 60; ++it) {
                const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                const double f1 = std::abs(fn.f(Complex(r * std::cos(m1), r * std::sin(m1))));
                const double f2 = std::abs(fn.f(Complex(r * std::cos(m2), r * std::sin(m2))));
                if (f1 < f2)
                    hi = m2;
                else
                    lo = m1;
            }
            const double th = 0.5 * (lo + hi);
            const double dip = std::abs(fn.f(Complex(r * std::cos(th), r * std::sin(th))));
            splits.push_back({th, dip < 1e-11 * top});
        }
    }
    return splits;
}

} // namespace

double proximity(const MeromorphicMap& f, const SpherePoint& a, double r,
                 double abs_tol, const TargetZeroSet* zero_table) {
    if (f.is_constant()) throw DomainError("proximity requires a nonconstant map");
    if (!(r > 0.0) || !(r < f.domain_radius()))
        throw DomainError("proximity radius outside the map domain");
    auto integrand = [&](double th) {
        const HomJet j = f.jet(Complex(r * std::cos(th), r * std::sin(th)));
        const Complex b = a.a0() * j.f1 - a.a1() * j.f0;
        const double nf = std::hypot(std::abs(j.f0), std::abs(j.f1));
        return std::log(nf * a.norm()) - std::log(std::abs(b));
    };
    const double value =
        circle_average(integrand, abs_tol, proximity_splits(f, a, r, zero_table)).value;
    // The chordal distance is at most 1, so the mean is nonnegative up to
    // quadrature error.
    return std::max(value, 0.0);
}

double characteristic_ahlfors(const MeromorphicMap& f, double r0, double r,
                              double abs_tol) {
    if (f.is_constant()) throw DomainError("characteristic requires a nonconstant map");
    if (r == r0) return 0.0;
    if (!(0.0 < r0 && r0 < r && r < f.domain_radius()))
        throw DomainError("characteristic needs 0 < r0 < r inside the domain");
    auto rho = [&](const Complex& w) { return fs_pullback_density(f, w); };
    auto hints = [&](double t) { return f.angular_hints(t); };
    return height_integral(rho, r0, r, abs_tol, hints).value;
}

double characteristic_green(const MeromorphicMap& f, const SurfaceModel& surface,
                            double r0, double r, double abs_tol) {
    if (f.is_constant()) throw DomainError("characteristic requires a nonconstant map");
    if (r == r0) return 0.0;
    if (!(0.0 < r0 && r0 < r && r < f.domain_radius()))
        throw DomainError("characteristic needs 0 < r0 < r inside the domain");
    auto hints = [&](double t) { return f.angular_hints(t); };
    // (1/4) Delta log ||f||^2 dV against dA: the metric weight enters and
    // cancels, written out so the conformal invariance is exercised.
    auto integrand = [&](const Complex& w) {
        const double lam = surface.lambda(w);
        const double laplacian = 4.0 * kPi * fs_pullback_density(f, w) / (2.0 * lam);
        return 0.25 * laplacian * (2.0 * lam);
    };
    const QuadResult big = disc_integral_log_weight(integrand, r, 0.5 * abs_tol * kPi, hints);
    const QuadResult small = disc_integral_log_weight(integrand, r0, 0.5 * abs_tol * kPi, hints);
    return (big.value - small.value) / kPi;
}

double ramification_counting(const MeromorphicMap& f, double r0, double r,
                             double zero_tol) {
    if (f.is_constant()) throw DomainError("ramification requires a nonconstant map");
    const AnalyticFunction wr = wronskian_function(f);
    const double r_eff = resolve_contour_radius(wr, r, f.domain_radius());
    const std::vector<ZeroRecord> zeros = locate_zeros(wr, r_eff, zero_tol, f.domain_radius());
    return counting_from_records(zeros, r0, r, false);
}

namespace {

NevanlinnaRow compute_row(const MeromorphicMap& f, const SurfaceModel& surface,
                          const std::vector<TargetZeroSet>& tables, double r0, double r,
                          const RowOptions& opts) {
    NevanlinnaRow row;
    row.r = r;
    try {
        row.T_ahlfors = characteristic_ahlfors(f, r0, r, opts.tol);
        row.T_green = opts.with_green
                          ? characteristic_green(f, surface, r0, r, opts.tol)
                          : row.T_ahlfors;
        row.T_ricci = opts.with_ricci ? ricci_characteristic(surface, r0, r, opts.tol) : 0.0;
        const auto extrema = form_norm_extrema(surface, r);
        row.form_norm_inf = extrema.first;
        row.form_norm_sup = extrema.second;
        for (const TargetZeroSet& table : tables) {
            TargetColumns col;
            col.target = table.target;
            col.m = proximity(f, table.target, r, opts.tol, &table);
            col.N = counting_from_records(table.zeros, r0, r, false);
            col.Nbar = counting_from_records(table.zeros, r0, r, true);
            row.targets.push_back(col);
        }
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

} // namespace

std::vector<NevanlinnaRow> assemble_rows(const MeromorphicMap& f,
                                         const SurfaceModel& surface,
                                         const std::vector<SpherePoint>& targets,
                                         double r0, const std::vector<double>& grid,
                                         const RowOptions& opts,
                                         std::vector<TargetZeroSet>* zero_tables) {
    if (grid.empty()) return {};
    if (f.is_constant()) throw DomainError("row assembly requires a nonconstant map");
    const double r_top = grid.back();
    std::vector<TargetZeroSet> tables;
    tables.reserve(targets.size());
    for (const SpherePoint& a : targets)
        tables.push_back(tabulate_zeros(f, a, r_top, opts.zero_tol));
    if (zero_tables) *zero_tables = tables;

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        opts.threads > 0 ? static_cast<unsigned>(opts.threads) : hw;

    std::vector<NevanlinnaRow> rows(grid.size());
    if (workers <= 1 || grid.size() < 2) {
        for (size_t i = 0; i < grid.size(); ++i)
            rows[i] = compute_row(f, surface, tables, r0, grid[i], opts);
        return rows;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            rows[i] = compute_row(f, surface, tables, r0, grid[i], opts);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<unsigned>(workers, grid.size()); ++t)
        pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return rows;
}

} // namespace nevlab
