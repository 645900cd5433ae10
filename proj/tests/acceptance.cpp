// Acceptance suite: one line per criterion, exit code = number of failures.
#include "nevlab/brownian.hpp"
#include "nevlab/catalog.hpp"
#include "nevlab/config.hpp"
#include "nevlab/nevanlinna.hpp"
#include "nevlab/rng.hpp"
#include "nevlab/runner.hpp"
#include "nevlab/verifier.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace nevlab;

namespace {

int g_failures = 0;

void criterion(const std::string& name, const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    if (!detail.empty() && detail.rfind("FAIL", 0) == 0) pass = false;
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::printf("[%s] %s (%lld ms)%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                static_cast<long long>(ms), detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string okfail(bool ok, const std::string& detail) {
    return (ok ? "" : "FAIL ") + detail;
}

const SurfaceModel& plane() {
    static SurfaceModel s = make_euclidean_plane();
    return s;
}
const SurfaceModel& disc() {
    static SurfaceModel s = make_euclidean_disc();
    return s;
}
const SurfaceModel& poincare() {
    static SurfaceModel s = make_poincare_disc();
    return s;
}

std::vector<SpherePoint> points(std::initializer_list<const char*> specs) {
    std::vector<SpherePoint> out;
    for (const char* s : specs) out.push_back(parse_target(s));
    return out;
}

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

int main() {
    criterion("identity-map exactness (T closed form, residual -log(2)/2, < 5 s)", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const MeromorphicMap id = build_function("identity", plane());
        double worst_T = 0.0;
        for (double r : {2.0, 5.0, 10.0, 50.0}) {
            const double T = characteristic_ahlfors(id, 1.0, r, 1e-8);
            const double expect = 0.5 * std::log((1.0 + r * r) / 2.0);
            worst_T = std::max(worst_T, std::abs(T - expect));
        }
        const auto grid = make_grid(2.0, 50.0, 16, true);
        const FmtVerdict v = fmt_residual(id, plane(), SpherePoint::infinity(), 1.0, grid);
        double worst_res = 0.0;
        for (double res : v.residual)
            worst_res = std::max(worst_res, std::abs(res + 0.5 * std::log(2.0)));
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        const bool ok = worst_T < 1e-6 && worst_res < 1e-6 && secs < 5.0;
        return okfail(ok, "max|T-closed|=" + fmt_num(worst_T) +
                              " max|res+log2/2|=" + fmt_num(worst_res) + " t=" +
                              fmt_num(secs) + "s");
    });

    criterion("exponential growth (m and T track r/pi, < 60 s)", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const MeromorphicMap ex = build_function("exp", plane());
        bool ok = true;
        double worst_m = 0.0, worst_T = 0.0;
        for (double r : {10.0, 17.0, 25.0, 33.0, 40.0}) {
            const double m = proximity(ex, SpherePoint::infinity(), r, 1e-8);
            const double T = characteristic_ahlfors(ex, 1.0, r, 1e-8);
            worst_m = std::max(worst_m, std::abs(m - r / kPi));
            worst_T = std::max(worst_T, std::abs(T - r / kPi));
            ok = ok && std::abs(m - r / kPi) < 0.5 && std::abs(T - r / kPi) < 0.7;
        }
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        ok = ok && secs < 60.0;
        return okfail(ok, "max|m-r/pi|=" + fmt_num(worst_m) + " max|T-r/pi|=" +
                              fmt_num(worst_T) + " t=" + fmt_num(secs) + "s");
    });

    criterion("extremal defect relation: e^w over {0, inf, 1}", [] {
        RowOptions opts;
        const auto grid = make_grid(5.0, 60.0, 48, true);
        const auto rows =
            assemble_rows(build_function("exp", plane()), plane(),
                          points({"0", "inf", "1"}), 1.0, grid, opts);
        const DefectRelationVerdict rel =
            defect_relation_check(rows, plane(), 0.0, GammaWeight::one());
        const bool ok = rel.sum >= 1.95 && rel.sum <= 2.0;
        return okfail(ok, "sum=" + fmt_num(rel.sum) + " target [1.95, 2.0]");
    });

    criterion("defect sum of w^2 over {0, inf, 1, -1} lands in [0.95, 1.05]", [] {
        // w^2 has no poles in the finite plane, so the simple defect of
        // infinity is 1 and the sum tends to 3/2, not 1; reported as
        // measured.
        RowOptions opts;
        const auto grid = make_grid(5.0, 60.0, 48, true);
        const auto rows =
            assemble_rows(build_function("square", plane()), plane(),
                          points({"0", "inf", "1", "-1"}), 1.0, grid, opts);
        const DefectRelationVerdict rel =
            defect_relation_check(rows, plane(), 0.0, GammaWeight::one());
        const bool ok = rel.sum >= 0.95 && rel.sum <= 1.05;
        return okfail(ok, "sum=" + fmt_num(rel.sum) + " target [0.95, 1.05]" +
                              (ok ? "" : " (defects 1/2, 1, 0, 0 sum to 3/2)"));
    });

    criterion("first-main-theorem residual width < 1 across the catalog", [] {
        struct Pair {
            const char* fn;
            const SurfaceModel* surf;
            const char* target;
            double lo, hi;
            double r0;
        };
        const std::vector<Pair> pairs = {
            {"identity", &plane(), "0", 2.0, 50.0, 1.0},
            {"identity", &plane(), "inf", 2.0, 50.0, 1.0},
            {"identity", &plane(), "1", 2.0, 50.0, 1.0},
            {"square", &plane(), "0", 2.0, 50.0, 1.0},
            {"square", &plane(), "inf", 2.0, 50.0, 1.0},
            {"cubic-roots", &plane(), "0", 2.0, 50.0, 1.0},
            {"cubic-roots", &plane(), "inf", 2.0, 50.0, 1.0},
            {"moebius", &plane(), "0", 2.0, 50.0, 1.0},
            {"moebius", &plane(), "1", 2.0, 50.0, 1.0},
            {"moebius", &plane(), "inf", 2.0, 50.0, 1.0},
            {"exp", &plane(), "0", 5.0, 40.0, 1.0},
            {"exp", &plane(), "inf", 5.0, 40.0, 1.0},
            {"exp", &plane(), "1", 5.0, 40.0, 1.0},
            {"inv-gap", &disc(), "0", 0.55, 0.9, 0.5},
            {"inv-gap", &disc(), "inf", 0.55, 0.9, 0.5},
            {"lacunary", &disc(), "0", 0.55, 0.9, 0.5},
            {"lacunary", &disc(), "inf", 0.55, 0.9, 0.5},
            {"exp-gap", &disc(), "0", 0.55, 0.9, 0.5},
            {"exp-gap", &disc(), "inf", 0.55, 0.9, 0.5},
            {"moebius", &poincare(), "0", 0.55, 0.9, 0.5},
            {"moebius", &poincare(), "inf", 0.55, 0.9, 0.5},
        };
        int passed = 0;
        double worst = 0.0;
        std::string worst_pair;
        for (const Pair& p : pairs) {
            const MeromorphicMap f = build_function(p.fn, *p.surf);
            const auto grid = make_grid(p.lo, p.hi, 10, true);
            const FmtVerdict v =
                fmt_residual(f, *p.surf, parse_target(p.target), p.r0, grid, 1.0);
            if (v.pass) ++passed;
            if (v.width > worst) {
                worst = v.width;
                worst_pair = std::string(p.fn) + "/" + p.target;
            }
        }
        const bool ok = passed == static_cast<int>(pairs.size()) && pairs.size() >= 12;
        return okfail(ok, std::to_string(passed) + "/" + std::to_string(pairs.size()) +
                              " pairs, worst width " + fmt_num(worst) + " (" + worst_pair +
                              ")");
    });

    criterion("second main theorem: e^w, gamma = 1, delta = 0.1, 60-point grid", [] {
        const auto grid = make_grid(5.0, 60.0, 60, true);
        RowOptions opts;
        const SmtVerdict v =
            smt_check(build_function("exp", plane()), points({"0", "inf", "1"}), plane(),
                      GammaWeight::one(), 0.1, 1.0, grid, 0.99, opts);
        const bool ok = v.pass && v.gamma_measure_of_exceptional < 2.0;
        return okfail(ok, "coverage pass=" + std::string(v.pass ? "yes" : "no") +
                              " exceptional gamma measure=" +
                              fmt_num(v.gamma_measure_of_exceptional) + " c=" +
                              fmt_num(v.fitted_error_constant) + " c'=" +
                              fmt_num(v.fitted_offset_constant));
    });

    criterion("disc regime: unbounded holomorphic map, gamma = 1/(1-r)", [] {
        const auto grid = make_grid(0.55, 0.97, 40, true);
        RowOptions opts;
        const SmtVerdict v = smt_check(build_function("lacunary", disc()),
                                       points({"0", "inf", "1"}), disc(),
                                       GammaWeight::inverse_gap(1.0), 0.1, 0.5, grid, 0.99,
                                       opts);
        const bool ok = v.pass && v.gamma_measure_of_exceptional < 5.0;
        return okfail(ok, "exceptional integral=" +
                              fmt_num(v.gamma_measure_of_exceptional) + " c=" +
                              fmt_num(v.fitted_error_constant) + " c'=" +
                              fmt_num(v.fitted_offset_constant));
    });

    criterion("curvature chain on the poincare disc", [] {
        double worst_slack = 1e300;
        double worst_pos = -1e300;
        for (double r : make_grid(0.55, 0.95, 24, true)) {
            const double ric = ricci_characteristic(poincare(), 0.5, r, 1e-9);
            const double inf_norm = form_norm_extrema(poincare(), r).first;
            const double bound = -r * r / (4.0 * inf_norm);
            worst_slack = std::min(worst_slack, ric - bound);
            worst_pos = std::max(worst_pos, ric);
        }
        const bool ok = worst_slack > -1e-6 && worst_pos <= 1e-6;
        return okfail(ok, "min(ricci - bound)=" + fmt_num(worst_slack) +
                              " max ricci=" + fmt_num(worst_pos));
    });

    criterion("metric independence of T, m, N on the disc", [] {
        const auto grid = make_grid(0.55, 0.9, 6, true);
        RowOptions opts;
        double worst = 0.0;
        for (const char* id : {"moebius", "cubic-roots"}) {
            const MeromorphicMap f = build_function(id, disc());
            const auto flat =
                assemble_rows(f, disc(), points({"0", "inf"}), 0.5, grid, opts);
            const auto curved =
                assemble_rows(f, poincare(), points({"0", "inf"}), 0.5, grid, opts);
            for (size_t i = 0; i < grid.size(); ++i) {
                worst = std::max(worst, std::abs(flat[i].T_ahlfors - curved[i].T_ahlfors));
                worst = std::max(worst, std::abs(flat[i].T_green - curved[i].T_green));
                for (size_t j = 0; j < 2; ++j) {
                    worst = std::max(
                        worst, std::abs(flat[i].targets[j].m - curved[i].targets[j].m));
                    worst = std::max(
                        worst, std::abs(flat[i].targets[j].N - curved[i].targets[j].N));
                }
            }
        }
        return okfail(worst < 1e-8, "max deviation " + fmt_num(worst));
    });

    criterion("chart reduction: half-plane presentation of the disc", [] {
        const SurfaceModel chart_surface = make_halfplane_chart_surface();
        const ExhaustionReport ex =
            exhaustion_check(chart_surface.chart(), {1.0, 10.0, 100.0});
        if (ex.classification != "parabolic")
            return std::string("FAIL classified ") + ex.classification;
        const auto grid = make_grid(2.0, 50.0, 8, true);
        RowOptions opts;
        const auto via_chart = assemble_rows(
            build_function("composed{outer:identity,chart:halfplane}", chart_surface),
            chart_surface, points({"0", "inf"}), 1.0, grid, opts);
        const auto direct =
            assemble_rows(build_function("moebius{1,0,1,1}", plane()), plane(),
                          points({"0", "inf"}), 1.0, grid, opts);
        double worst = 0.0;
        for (size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst,
                             std::abs(via_chart[i].T_ahlfors - direct[i].T_ahlfors));
            for (size_t j = 0; j < 2; ++j) {
                worst = std::max(worst, std::abs(via_chart[i].targets[j].m -
                                                 direct[i].targets[j].m));
                worst = std::max(worst, std::abs(via_chart[i].targets[j].N -
                                                 direct[i].targets[j].N));
            }
        }
        return okfail(worst < 1e-6, "parabolic, max |z-chart - w-chart| = " + fmt_num(worst));
    });

    criterion("zero machinery on 20 random planted polynomials", [] {
        PathRng rng(777001, 0);
        int polys = 0;
        double worst_resid = 0.0;
        bool ok = true;
        while (polys < 20) {
            std::vector<Complex> roots;
            std::vector<int> mults;
            int degree = 0;
            const int want = 3 + static_cast<int>(rng.next_uniform() * 6.0); // degree target <= 8
            while (degree < want) {
                Complex root;
                bool placed = false;
                for (int tries = 0; tries < 60 && !placed; ++tries) {
                    root = Complex(3.2 * rng.next_uniform() - 1.6,
                                   3.2 * rng.next_uniform() - 1.6);
                    placed = std::abs(root) < 1.6;
                    for (const Complex& r : roots)
                        placed = placed && std::abs(root - r) > 0.08;
                }
                if (!placed) break;
                int m = 1 + static_cast<int>(rng.next_uniform() * 3.0);
                m = std::min(m, want - degree);
                roots.push_back(root);
                mults.push_back(m);
                degree += m;
            }
            if (degree == 0) continue;
            std::vector<Complex> coeffs{1.0};
            for (size_t i = 0; i < roots.size(); ++i)
                for (int k = 0; k < mults[i]; ++k) {
                    std::vector<Complex> next(coeffs.size() + 1, Complex{0.0, 0.0});
                    for (size_t j = 0; j < coeffs.size(); ++j) {
                        next[j + 1] += coeffs[j];
                        next[j] -= coeffs[j] * roots[i];
                    }
                    coeffs = std::move(next);
                }
            const MeromorphicMap f = make_rational(coeffs, {{1.0, 0.0}});
            const int counted = count_zeros(f, SpherePoint::zero(), 2.0);
            const auto zeros = locate_zeros(f, SpherePoint::zero(), 2.0, 1e-6);
            int total = 0;
            for (const ZeroRecord& z : zeros) {
                total += z.multiplicity;
                worst_resid = std::max(worst_resid, z.residual);
            }
            ok = ok && counted == degree && total == degree;
            ++polys;
        }
        ok = ok && worst_resid < 1e-9;
        return okfail(ok, "20 polynomials, worst residual " + fmt_num(worst_resid));
    });

    criterion("stochastic oracle: boundary-average identity and exit law (< 30 s)", [] {
        const auto t0 = std::chrono::steady_clock::now();
        BmConfig cfg;
        cfg.surface = &plane();
        cfg.n_paths = 10000;
        cfg.step = 4e-5;
        cfg.seed = 20240814;
        cfg.r_exit = 1.0;
        auto u = [](Complex w) { return std::norm(w); };
        auto lap = [](Complex) { return 4.0; };
        const DynkinComparison d = dynkin_check(u, lap, cfg, 1e-9);
        const ExitSamples s = sample_exits(cfg);
        const double ks = ks_uniformity_statistic(s.angles);
        const double ks_crit = 1.63 / std::sqrt(static_cast<double>(cfg.n_paths));
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        const bool ok = std::abs(d.lhs_analytic - 1.0) < 1e-6 &&
                        std::abs(d.rhs_analytic - 1.0) < 1e-6 &&
                        d.mc_vs_lhs_sigmas <= 3.0 && ks < ks_crit && secs < 30.0;
        return okfail(ok, "lhs=" + fmt_num(d.lhs_analytic) + " rhs=" +
                              fmt_num(d.rhs_analytic) + " mc=" + fmt_num(d.mc_estimate) +
                              " ks=" + fmt_num(ks) + " t=" + fmt_num(secs) + "s");
    });

    criterion("calculus and borel growth lemmas on their worked examples", [] {
        bool ok = true;
        std::ostringstream detail;
        // calculus lemma: unit, quadratic, zero densities on the plane
        {
            const auto grid = make_grid(1.2, 20.0, 30, true);
            const CalculusVerdict a = calculus_lemma_check(
                [](const Complex&) { return 1.0; }, plane(), GammaWeight::one(), 0.5, 1.0,
                grid, 2.0, 1e-9);
            const CalculusVerdict b = calculus_lemma_check(
                [](const Complex& w) { return std::norm(w); }, plane(), GammaWeight::one(),
                0.5, 1.0, grid, 2.0, 1e-9);
            const CalculusVerdict c = calculus_lemma_check(
                [](const Complex&) { return 0.0; }, plane(), GammaWeight::one(), 0.5, 1.0,
                grid, 2.0, 1e-9);
            ok = ok && a.pass && b.pass && c.pass && c.vacuous;
            detail << "calculus measures " << fmt_num(a.gamma_measure_of_exceptional) << "/"
                   << fmt_num(b.gamma_measure_of_exceptional) << "/vacuous";
        }
        // borel lemma: log, linear, doubly exponential curves
        {
            const GammaWeight one = GammaWeight::one();
            auto grid1 = make_grid(1.05, 50.0, 800, false);
            std::vector<double> h1;
            for (double r : grid1) h1.push_back(std::log(r));
            const BorelVerdict v1 = borel_growth_check(grid1, h1, one, 1.0, 2.0);

            auto grid2 = make_grid(0.1, 10.0, 800, false);
            std::vector<double> h2(grid2.begin(), grid2.end());
            const BorelVerdict v2 = borel_growth_check(grid2, h2, one, 0.5, 2.0);

            auto grid3 = make_grid(0.5, 5.0, 1200, false);
            std::vector<double> h3;
            for (double r : grid3) h3.push_back(std::exp(std::exp(r)));
            const BorelVerdict v3 = borel_growth_check(grid3, h3, one, 0.1, 5.0);

            ok = ok && v1.pass && v2.pass && v3.pass;
            detail << ", borel measures " << fmt_num(v1.gamma_measure_full) << "/"
                   << fmt_num(v2.gamma_measure_full) << "/" << fmt_num(v3.gamma_measure_full);
        }
        return okfail(ok, detail.str());
    });

    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
