#include "nevlab/verifier.hpp"
#include "nevlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nevlab {

namespace {

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

void require_distinct(const std::vector<SpherePoint>& targets) {
    for (size_t i = 0; i < targets.size(); ++i)
        for (size_t j = i + 1; j < targets.size(); ++j)
            if (spherical_distance(targets[i], targets[j]) <= 1e-9)
                throw ConfigError("targets must be pairwise distinct");
}

} // namespace

GammaWeight GammaWeight::one() {
    return GammaWeight("one", [](double) { return 1.0; });
}

GammaWeight GammaWeight::inverse_gap(double s_radius) {
    if (!std::isfinite(s_radius))
        throw ConfigError("inverse-gap gamma needs a finite canonical radius");
    return GammaWeight("inverse-gap", [s_radius](double r) {
        const double gap = s_radius - r;
        if (!(gap > 0.0)) throw DomainError("gamma evaluated at or past the radius");
        return 1.0 / gap;
    });
}

GammaWeight GammaWeight::custom(std::string name, std::function<double(double)> fn) {
    return GammaWeight(std::move(name), std::move(fn));
}

double GammaWeight::operator()(double r) const {
    const double v = fn_(r);
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError("gamma weight must be positive and finite");
    return v;
}

std::vector<double> make_grid(double r_min, double r_max, int points, bool geometric) {
    if (!(0.0 < r_min && r_min < r_max) || points < 2)
        throw ConfigError("grid needs 0 < r_min < r_max and at least two points");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) {
        const double s = static_cast<double>(i) / (points - 1);
        g[i] = geometric ? r_min * std::pow(r_max / r_min, s)
                         : r_min + (r_max - r_min) * s;
    }
    g.back() = r_max;
    return g;
}

double exceptional_gamma_measure(const std::vector<double>& grid,
                                 const std::vector<bool>& violating,
                                 const GammaWeight& gamma) {
    double measure = 0.0;
    const size_t n = grid.size();
    for (size_t i = 0; i < n; ++i) {
        if (!violating[i]) continue;
        const double lo = i == 0 ? grid[0] : 0.5 * (grid[i - 1] + grid[i]);
        const double hi = i + 1 == n ? grid[n - 1] : 0.5 * (grid[i] + grid[i + 1]);
        measure += gamma(grid[i]) * (hi - lo);
    }
    return measure;
}

// --- FMT ---------------------------------------------------------------------

FmtVerdict fmt_residual(const std::vector<NevanlinnaRow>& rows, size_t target_index,
                        double bound) {
    FmtVerdict v;
    v.bound = bound;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const NevanlinnaRow& row : rows) {
        if (!row.ok || target_index >= row.targets.size()) {
            ++v.skipped;
            continue;
        }
        const TargetColumns& col = row.targets[target_index];
        const double res = row.T_ahlfors - col.m - col.N;
        v.grid.push_back(row.r);
        v.residual.push_back(res);
        lo = std::min(lo, res);
        hi = std::max(hi, res);
    }
    v.width = v.residual.empty() ? 0.0 : hi - lo;
    v.pass = !v.residual.empty() && v.width < bound;
    return v;
}

FmtVerdict fmt_residual(const MeromorphicMap& f, const SurfaceModel& surface,
                        const SpherePoint& a, double r0, const std::vector<double>& grid,
                        double bound, const RowOptions& opts) {
    RowOptions local = opts;
    local.with_green = false;
    local.with_ricci = false;
    return fmt_residual(assemble_rows(f, surface, {a}, r0, grid, local), 0, bound);
}

// --- SMT ---------------------------------------------------------------------

namespace {

struct EnvelopeFit {
    double c = 0.0;
    double c_prime = 0.0;
};

// Minimal (c, c') with  needed_i <= c*env_i + c'  on all but
// `allowed` points; among admissible pairs the mean fitted envelope
// c*mean(env) + c' is minimized, ties toward smaller c.
EnvelopeFit fit_envelope(const std::vector<double>& needed, const std::vector<double>& env,
                         int allowed) {
    const size_t n = needed.size();
    double mean_env = 0.0;
    for (double e : env) mean_env += e;
    mean_env = n ? mean_env / n : 0.0;

    EnvelopeFit best;
    double best_score = std::numeric_limits<double>::infinity();
    for (int ci = 0; ci <= 64; ++ci) {
        const double c = 0.25 * ci;
        std::vector<double> excess(n);
        for (size_t i = 0; i < n; ++i) excess[i] = needed[i] - c * env[i];
        std::sort(excess.begin(), excess.end(), std::greater<double>());
        const double cp = std::max(0.0, n ? excess[std::min<size_t>(allowed, n - 1)] : 0.0);
        const double score = c * mean_env + cp;
        if (score < best_score - 1e-12) {
            best_score = score;
            best.c = c;
            best.c_prime = cp;
        }
    }
    return best;
}

SmtVerdict smt_core(const std::vector<NevanlinnaRow>& rows, const GammaWeight& gamma,
                    double delta, double coverage, bool curvature_form,
                    double curvature_bound) {
    if (!(delta > 0.0)) throw ConfigError("delta must be positive");
    SmtVerdict v;
    v.delta = delta;
    v.coverage = coverage;
    v.curvature_form = curvature_form;

    std::vector<double> needed;
    std::vector<double> rhs_core;
    for (const NevanlinnaRow& row : rows) {
        if (!row.ok || row.targets.empty()) {
            ++v.skipped;
            continue;
        }
        const double q = static_cast<double>(row.targets.size());
        double nbar_sum = 0.0;
        for (const TargetColumns& col : row.targets) nbar_sum += col.Nbar;
        const double gamma_r = gamma(row.r);
        const double env = log_plus(row.T_ahlfors) + log_plus(row.form_norm_sup) +
                           log_plus(gamma_r) + delta * log_plus(row.r);
        double lhs, base;
        if (curvature_form) {
            const double curv_term =
                curvature_bound * row.r * row.r / (4.0 * row.form_norm_inf);
            lhs = (q - 2.0) * row.T_ahlfors;
            base = nbar_sum + curv_term;
            v.ricci.push_back(row.T_ricci);
            v.ricci_lower_bound.push_back(-curv_term);
            if (row.T_ricci < -curv_term - 1e-6) v.ricci_bound_holds = false;
            if (row.T_ricci > 1e-6) v.ricci_nonpositive = false;
        } else {
            lhs = (q - 2.0) * row.T_ahlfors + row.T_ricci;
            base = nbar_sum;
        }
        v.grid.push_back(row.r);
        v.lhs.push_back(lhs);
        v.T.push_back(row.T_ahlfors);
        v.gamma_values.push_back(gamma_r);
        v.norm_sup.push_back(row.form_norm_sup);
        v.envelope_raw.push_back(env);
        rhs_core.push_back(base);
        needed.push_back(lhs - base);
    }

    const size_t n = v.grid.size();
    const int allowed = static_cast<int>(std::floor(n * (1.0 - coverage) + 1e-9));
    const EnvelopeFit fit = fit_envelope(needed, v.envelope_raw, allowed);
    v.fitted_error_constant = fit.c;
    v.fitted_offset_constant = fit.c_prime;

    std::vector<bool> violating(n, false);
    for (size_t i = 0; i < n; ++i) {
        const double rhs = rhs_core[i] + fit.c * v.envelope_raw[i] + fit.c_prime;
        v.rhs.push_back(rhs);
        v.slack.push_back(rhs - v.lhs[i]);
        if (v.lhs[i] > rhs + 1e-12) {
            violating[i] = true;
            v.exceptional.push_back(v.grid[i]);
        }
    }
    v.gamma_measure_of_exceptional = exceptional_gamma_measure(v.grid, violating, gamma);
    const size_t ok_points = n - v.exceptional.size();
    v.pass = n > 0 && static_cast<double>(ok_points) >= coverage * n;
    if (curvature_form) v.pass = v.pass && v.ricci_bound_holds && v.ricci_nonpositive;
    return v;
}

} // namespace

SmtVerdict smt_check(const std::vector<NevanlinnaRow>& rows, const GammaWeight& gamma,
                     double delta, double coverage) {
    return smt_core(rows, gamma, delta, coverage, false, 0.0);
}

SmtVerdict smt_check(const MeromorphicMap& f, const std::vector<SpherePoint>& targets,
                     const SurfaceModel& surface, const GammaWeight& gamma, double delta,
                     double r0, const std::vector<double>& grid, double coverage,
                     const RowOptions& opts) {
    if (targets.empty()) throw ConfigError("second main theorem check needs targets");
    require_distinct(targets);
    if (f.is_constant()) throw DomainError("second main theorem needs a nonconstant map");
    return smt_check(assemble_rows(f, surface, targets, r0, grid, opts), gamma, delta,
                     coverage);
}

SmtVerdict smt_check_curvature_form(const std::vector<NevanlinnaRow>& rows,
                                    const SurfaceModel& surface, double curvature_bound,
                                    const GammaWeight& gamma, double delta,
                                    double coverage) {
    if (curvature_bound < 0.0) throw ConfigError("curvature bound must be nonnegative");
    // Verify -C <= K <= 0 by sampling up to the largest grid radius.
    double r_top = 0.0;
    for (const NevanlinnaRow& row : rows) r_top = std::max(r_top, row.r);
    for (int i = 0; i < 200; ++i) {
        const double t = r_top * std::sqrt((i + 0.5) / 200.0);
        const double th = kTwoPi * (i * 0.6180339887498949);
        const double k =
            gauss_curvature(surface, Complex(t * std::cos(th), t * std::sin(th)));
        if (k < -curvature_bound - 1e-6 || k > 1e-6)
            throw CurvatureBoundError("sampled curvature outside [-C, 0]");
    }
    return smt_core(rows, gamma, delta, coverage, true, curvature_bound);
}

SmtVerdict smt_check_curvature_form(const MeromorphicMap& f,
                                    const std::vector<SpherePoint>& targets,
                                    const SurfaceModel& surface, double curvature_bound,
                                    const GammaWeight& gamma, double delta, double r0,
                                    const std::vector<double>& grid, double coverage,
                                    const RowOptions& opts) {
    if (targets.empty()) throw ConfigError("second main theorem check needs targets");
    require_distinct(targets);
    return smt_check_curvature_form(assemble_rows(f, surface, targets, r0, grid, opts),
                                    surface, curvature_bound, gamma, delta, coverage);
}

// --- defects -------------------------------------------------------------------

DefectEstimate defect(const std::vector<NevanlinnaRow>& rows, size_t target_index) {
    DefectEstimate d;
    for (const NevanlinnaRow& row : rows) {
        if (!row.ok || target_index >= row.targets.size()) continue;
        d.target = row.targets[target_index].target;
        d.grid.push_back(row.r);
        d.ratio.push_back(row.targets[target_index].Nbar /
                          std::max(row.T_ahlfors, 1e-300));
    }
    if (d.grid.empty()) throw DomainError("defect estimate needs usable rows");
    const size_t n = d.grid.size();
    const size_t decile = std::max<size_t>(1, n / 10);
    double limsup = -std::numeric_limits<double>::infinity();
    double top_T = 0.0;
    size_t idx = 0;
    for (const NevanlinnaRow& row : rows) {
        if (!row.ok || target_index >= row.targets.size()) continue;
        if (idx >= n - decile) {
            limsup = std::max(limsup, d.ratio[idx]);
            top_T = std::max(top_T, row.T_ahlfors);
        }
        ++idx;
    }
    if (top_T < 1e-10)
        throw InsufficientGrowthError(
            "characteristic too small at the top radii for a defect estimate");
    d.limsup_estimate = limsup;
    d.delta_bar = 1.0 - limsup;
    return d;
}

DefectEstimate defect(const MeromorphicMap& f, const SurfaceModel& surface,
                      const SpherePoint& a, double r0, const std::vector<double>& grid,
                      const RowOptions& opts) {
    RowOptions local = opts;
    local.with_green = false;
    local.with_ricci = false;
    return defect(assemble_rows(f, surface, {a}, r0, grid, local), 0);
}

DefectRelationVerdict defect_relation_check(const std::vector<NevanlinnaRow>& rows,
                                            const SurfaceModel& surface,
                                            double curvature_bound,
                                            const GammaWeight& gamma) {
    (void)surface;
    DefectRelationVerdict v;
    if (rows.empty()) throw DomainError("defect relation needs rows");
    const size_t q = rows.front().targets.size();
    for (size_t j = 0; j < q; ++j) {
        DefectEstimate d = defect(rows, j);
        v.sum += d.delta_bar;
        v.defects.push_back(std::move(d));
    }
    // Growth hypothesis: (C r^2 / ||S||_inf + log(gamma ||S||_sup)) / T
    // should be negligible at the top radii.
    std::vector<double> ratios;
    for (const NevanlinnaRow& row : rows) {
        if (!row.ok) continue;
        const double num = curvature_bound * row.r * row.r / row.form_norm_inf +
                           std::log(std::max(gamma(row.r) * row.form_norm_sup, 1e-300));
        ratios.push_back(std::abs(num) / std::max(row.T_ahlfors, 1e-300));
    }
    const size_t n = ratios.size();
    const size_t decile = std::max<size_t>(1, n / 10);
    for (size_t i = n - decile; i < n; ++i)
        v.growth_hypothesis_ratio = std::max(v.growth_hypothesis_ratio, ratios[i]);
    v.growth_warning = v.growth_hypothesis_ratio > 0.1;
    v.pass = v.sum <= v.bound + v.tolerance;
    return v;
}

// --- calculus lemma --------------------------------------------------------------

CalculusVerdict calculus_lemma_check(const std::function<double(const Complex&)>& k,
                                     const SurfaceModel& surface, const GammaWeight& gamma,
                                     double delta, double r0, const std::vector<double>& grid,
                                     double budget, double abs_tol) {
    if (!(delta > 0.0)) throw ConfigError("delta must be positive");
    CalculusVerdict v;
    v.budget = budget;
    // k must be nonnegative: signed densities make A^{(1+delta)^2} ill-defined.
    for (int i = 0; i < 64; ++i) {
        const double t = grid.back() * std::sqrt((i + 0.5) / 64.0);
        const double th = kTwoPi * (i * 0.6180339887498949);
        if (k(Complex(t * std::cos(th), t * std::sin(th))) < -1e-12)
            throw DomainError("calculus lemma check requires k >= 0");
    }
    auto k_dV = [&](const Complex& w) { return k(w) * surface.area_density(w); };

    std::vector<double> lhs, rhs, radii;
    for (double r : grid) {
        try {
            auto on_circle = [&](double th) {
                return k(Complex(r * std::cos(th), r * std::sin(th)));
            };
            const double E = harmonic_measure_average(on_circle, r, abs_tol);
            const double A = height_integral(k_dV, r0, r, abs_tol).value;
            const double norm_sup = form_norm_extrema(surface, r).second;
            const double expo = (1.0 + delta) * (1.0 + delta);
            const double cap = norm_sup * std::pow(r, delta) *
                               std::pow(gamma(r), 2.0 + delta) / kTwoPi *
                               (A > 0.0 ? std::pow(A, expo) : 0.0);
            radii.push_back(r);
            lhs.push_back(E);
            rhs.push_back(cap);
        } catch (const std::exception&) {
            ++v.skipped;
        }
    }
    v.grid = radii;
    v.lhs = lhs;
    v.rhs = rhs;

    bool all_zero = true;
    for (size_t i = 0; i < lhs.size(); ++i)
        if (lhs[i] != 0.0 || rhs[i] != 0.0) all_zero = false;
    if (all_zero) {
        v.vacuous = true;
        v.pass = true;
        return v;
    }

    std::vector<bool> violating(radii.size(), false);
    for (size_t i = 0; i < radii.size(); ++i)
        if (lhs[i] > rhs[i] + 1e-12) {
            violating[i] = true;
            v.exceptional.push_back(radii[i]);
        }
    v.gamma_measure_of_exceptional = exceptional_gamma_measure(radii, violating, gamma);
    v.pass = v.gamma_measure_of_exceptional < budget;
    return v;
}

// --- borel growth lemma -----------------------------------------------------------

BorelVerdict borel_growth_check(const std::vector<double>& grid,
                                const std::vector<double>& h, const GammaWeight& gamma,
                                double delta, double budget) {
    if (grid.size() != h.size() || grid.size() < 4)
        throw ConfigError("borel check needs matching grids of at least four samples");
    if (!(h.front() > 0.0)) throw ConfigError("borel check needs h(r0) > 0");
    for (size_t i = 1; i < h.size(); ++i)
        if (h[i] < h[i - 1] - 1e-12 * std::abs(h[i - 1]))
            throw ConfigError("borel check needs a nondecreasing curve");

    BorelVerdict v;
    v.budget = budget;
    v.grid = grid;

    auto measure_at = [&](const std::vector<double>& rr, const std::vector<double>& hh,
                          std::vector<double>* deriv, std::vector<double>* allow,
                          std::vector<double>* exc) {
        const size_t n = rr.size();
        std::vector<bool> violating(n, false);
        for (size_t i = 0; i < n; ++i) {
            double d;
            if (i == 0)
                d = (hh[1] - hh[0]) / (rr[1] - rr[0]);
            else if (i + 1 == n)
                d = (hh[n - 1] - hh[n - 2]) / (rr[n - 1] - rr[n - 2]);
            else
                d = (hh[i + 1] - hh[i - 1]) / (rr[i + 1] - rr[i - 1]);
            const double cap = std::pow(hh[i], 1.0 + delta) * gamma(rr[i]);
            if (deriv) deriv->push_back(d);
            if (allow) allow->push_back(cap);
            if (d > cap * (1.0 + 1e-12)) {
                violating[i] = true;
                if (exc) exc->push_back(rr[i]);
            }
        }
        return exceptional_gamma_measure(rr, violating, gamma);
    };

    v.gamma_measure_full = measure_at(grid, h, &v.derivative, &v.allowed, &v.exceptional);

    std::vector<double> rr2, hh2;
    for (size_t i = 0; i < grid.size(); i += 2) {
        rr2.push_back(grid[i]);
        hh2.push_back(h[i]);
    }
    v.gamma_measure_coarse = measure_at(rr2, hh2, nullptr, nullptr, nullptr);
    v.pass = v.gamma_measure_full < budget && v.gamma_measure_coarse < budget;
    return v;
}

} // namespace nevlab
