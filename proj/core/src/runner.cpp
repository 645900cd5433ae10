#include "nevlab/runner.hpp"

#include "nevlab/brownian.hpp"
#include "nevlab/catalog.hpp"
#include "nevlab/errors.hpp"
#include "nevlab/verifier.hpp"
#include "nevlab/version.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

namespace nevlab {

namespace {

bool has_check(const ExperimentConfig& cfg, const std::string& name) {
    return std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
}

Json config_echo(const ExperimentConfig& cfg) {
    Json j;
    j["surface"] = cfg.surface_spec;
    j["function"] = cfg.function_spec;
    j["targets"] = cfg.target_specs;
    if (cfg.r0) j["r0"] = *cfg.r0;
    j["grid"] = {{"min", cfg.grid.r_min},
                 {"max", cfg.grid.r_max},
                 {"points", cfg.grid.points},
                 {"spacing", cfg.grid.geometric ? "geometric" : "linear"}};
    j["gamma"] = cfg.gamma_kind;
    j["delta"] = cfg.delta;
    j["tol"] = cfg.tol;
    j["zero_tol"] = cfg.zero_tol;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["checks"] = cfg.checks;
    j["fmt_bound"] = cfg.fmt_bound;
    j["smt_coverage"] = cfg.smt_coverage;
    if (cfg.curvature_bound) j["smt_curvature_bound"] = *cfg.curvature_bound;
    j["exceptional_budget"] = cfg.exceptional_budget;
    j["calculus_density"] = cfg.calculus_density;
    j["borel_curve"] = cfg.borel_curve;
    j["oracle"] = {{"paths", cfg.oracle_paths}, {"step", cfg.oracle_step}};
    if (cfg.oracle_radius) j["oracle"]["radius"] = *cfg.oracle_radius;
    return j;
}

Json fmt_to_json(const FmtVerdict& v, const std::string& target) {
    Json j;
    j["target"] = target;
    j["grid"] = v.grid;
    j["residual"] = v.residual;
    j["width"] = v.width;
    j["bound"] = v.bound;
    j["skipped"] = v.skipped;
    j["pass"] = v.pass;
    return j;
}

Json smt_to_json(const SmtVerdict& v) {
    Json j;
    j["curvature_form"] = v.curvature_form;
    j["grid"] = v.grid;
    j["lhs"] = v.lhs;
    j["rhs"] = v.rhs;
    j["slack"] = v.slack;
    j["envelope_raw"] = v.envelope_raw;
    j["T"] = v.T;
    j["gamma"] = v.gamma_values;
    j["norm_sup"] = v.norm_sup;
    j["fitted_error_constant"] = v.fitted_error_constant;
    j["fitted_offset_constant"] = v.fitted_offset_constant;
    j["delta"] = v.delta;
    j["coverage"] = v.coverage;
    j["exceptional_set"] = v.exceptional;
    j["gamma_measure_of_exceptional"] = v.gamma_measure_of_exceptional;
    j["skipped"] = v.skipped;
    if (v.curvature_form) {
        j["ricci"] = v.ricci;
        j["ricci_lower_bound"] = v.ricci_lower_bound;
        j["ricci_bound_holds"] = v.ricci_bound_holds;
        j["ricci_nonpositive"] = v.ricci_nonpositive;
    }
    j["pass"] = v.pass;
    return j;
}

Json defect_to_json(const DefectEstimate& d, const std::string& target) {
    Json j;
    j["target"] = target;
    j["grid"] = d.grid;
    j["ratio"] = d.ratio;
    j["limsup_estimate"] = d.limsup_estimate;
    j["delta_bar"] = d.delta_bar;
    return j;
}

std::string target_label(const SpherePoint& a) {
    if (a.is_infinity()) return "inf";
    const Complex v = a.affine();
    std::ostringstream os;
    os << format_double(v.real());
    if (v.imag() != 0.0)
        os << (v.imag() < 0 ? "-" : "+") << format_double(std::abs(v.imag())) << "i";
    return os.str();
}

} // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    RunOutcome outcome;

    SurfaceModel surface = build_surface(cfg.surface_spec);
    cfg.validate(surface.s_radius());

    Json report;
    report["tool"] = {{"name", "nevlab"}, {"version", kVersion}};
    report["config"] = config_echo(cfg);

    // Chart surfaces carry their exhaustion certificate in the report.
    Json surface_json;
    surface_json["kind"] = surface.kind();
    surface_json["s_radius"] =
        std::isfinite(surface.s_radius()) ? Json(surface.s_radius()) : Json("inf");
    if (surface.has_chart()) {
        const std::vector<double> probe_radii = {cfg.grid.r_min,
                                                 std::sqrt(cfg.grid.r_min * cfg.grid.r_max),
                                                 cfg.grid.r_max};
        const ExhaustionReport ex = exhaustion_check(surface.chart(), probe_radii);
        surface_json["classification"] = ex.classification;
        surface_json["univalent"] = ex.univalent;
        Json radii = Json::array();
        for (const ExhaustionRadiusReport& rr : ex.radii)
            radii.push_back({{"r", rr.radius},
                             {"contained", rr.contained},
                             {"boundary_margin", rr.boundary_margin},
                             {"nested", rr.nested},
                             {"violations", rr.violations}});
        surface_json["exhaustion"] = std::move(radii);
    } else {
        surface_json["classification"] =
            std::isfinite(surface.s_radius()) ? "hyperbolic" : "parabolic";
    }
    report["surface"] = std::move(surface_json);

    MeromorphicMap f = build_function(cfg.function_spec, surface);
    validate_map(f);
    if (f.is_constant()) throw DomainError("configured function is constant");

    std::vector<SpherePoint> targets;
    for (const std::string& t : cfg.target_specs) targets.push_back(parse_target(t));
    for (size_t i = 0; i < targets.size(); ++i)
        for (size_t j = i + 1; j < targets.size(); ++j)
            if (spherical_distance(targets[i], targets[j]) <= 1e-9)
                throw ConfigError("targets must be pairwise distinct");

    const bool needs_targets = has_check(cfg, "fmt") || has_check(cfg, "smt") ||
                               has_check(cfg, "smt-curvature") || has_check(cfg, "defects");
    if (needs_targets && targets.empty())
        throw ConfigError("config field 'targets' is required by the enabled checks");

    const double r0 = cfg.r0 ? *cfg.r0 : default_r0(surface.s_radius());
    const std::vector<double> grid =
        make_grid(cfg.grid.r_min, cfg.grid.r_max, cfg.grid.points, cfg.grid.geometric);
    const GammaWeight gamma = cfg.gamma_kind == "one"
                                  ? GammaWeight::one()
                                  : GammaWeight::inverse_gap(surface.s_radius());

    RowOptions opts;
    opts.tol = cfg.tol;
    opts.zero_tol = cfg.zero_tol;
    opts.threads = cfg.threads;

    std::vector<TargetZeroSet> zero_tables;
    const std::vector<NevanlinnaRow> rows =
        assemble_rows(f, surface, targets, r0, grid, opts, &zero_tables);
    report["r0"] = r0;
    report["rows"] = rows_to_json(rows);
    {
        Json tables = Json::array();
        for (const TargetZeroSet& table : zero_tables) {
            Json t;
            t["target"] = target_label(table.target);
            t["contour_radius"] = table.radius;
            Json zs = Json::array();
            for (const ZeroRecord& z : table.zeros)
                zs.push_back({{"re", z.location.real()},
                              {"im", z.location.imag()},
                              {"multiplicity", z.multiplicity},
                              {"residual", z.residual},
                              {"cluster", z.cluster}});
            t["zeros"] = std::move(zs);
            tables.push_back(std::move(t));
        }
        report["zeros"] = std::move(tables);
    }

    Json verdicts;
    bool all_pass = true;

    if (has_check(cfg, "fmt")) {
        Json arr = Json::array();
        for (size_t j = 0; j < targets.size(); ++j) {
            const FmtVerdict v = fmt_residual(rows, j, cfg.fmt_bound);
            all_pass = all_pass && v.pass;
            arr.push_back(fmt_to_json(v, target_label(targets[j])));
        }
        verdicts["fmt"] = std::move(arr);
    }
    if (has_check(cfg, "smt")) {
        const SmtVerdict v = smt_check(rows, gamma, cfg.delta, cfg.smt_coverage);
        all_pass = all_pass && v.pass;
        verdicts["smt"] = smt_to_json(v);
    }
    if (has_check(cfg, "smt-curvature")) {
        const double c_bound = cfg.curvature_bound
                                   ? *cfg.curvature_bound
                                   : surface.curvature_lower_bound().value_or(0.0);
        const SmtVerdict v = smt_check_curvature_form(rows, surface, c_bound, gamma,
                                                      cfg.delta, cfg.smt_coverage);
        all_pass = all_pass && v.pass;
        verdicts["smt-curvature"] = smt_to_json(v);
    }
    if (has_check(cfg, "defects")) {
        Json arr = Json::array();
        DefectRelationVerdict rel = defect_relation_check(
            rows, surface,
            cfg.curvature_bound.value_or(surface.curvature_lower_bound().value_or(0.0)),
            gamma);
        for (size_t j = 0; j < rel.defects.size(); ++j)
            arr.push_back(defect_to_json(rel.defects[j], target_label(targets[j])));
        all_pass = all_pass && rel.pass;
        verdicts["defects"] = {{"per_target", std::move(arr)},
                               {"sum", rel.sum},
                               {"bound", rel.bound},
                               {"tolerance", rel.tolerance},
                               {"growth_hypothesis_ratio", rel.growth_hypothesis_ratio},
                               {"growth_warning", rel.growth_warning},
                               {"pass", rel.pass}};
    }
    if (has_check(cfg, "calculus")) {
        std::function<double(const Complex&)> k;
        if (cfg.calculus_density == "one") k = [](const Complex&) { return 1.0; };
        else if (cfg.calculus_density == "abs2") k = [](const Complex& w) { return std::norm(w); };
        else if (cfg.calculus_density == "zero") k = [](const Complex&) { return 0.0; };
        else throw ConfigError("unknown calculus.density '" + cfg.calculus_density + "'");
        const CalculusVerdict v = calculus_lemma_check(k, surface, gamma, cfg.delta, r0,
                                                       grid, cfg.exceptional_budget, cfg.tol);
        all_pass = all_pass && v.pass;
        verdicts["calculus"] = {{"grid", v.grid},
                                {"lhs", v.lhs},
                                {"rhs", v.rhs},
                                {"exceptional_set", v.exceptional},
                                {"gamma_measure_of_exceptional", v.gamma_measure_of_exceptional},
                                {"budget", v.budget},
                                {"vacuous", v.vacuous},
                                {"skipped", v.skipped},
                                {"pass", v.pass}};
    }
    if (has_check(cfg, "borel")) {
        double lo, hi;
        std::function<double(double)> curve;
        if (cfg.borel_curve == "log") {
            lo = std::max(1.02, cfg.grid.r_min);
            hi = cfg.grid.r_max;
            curve = [](double r) { return std::log(r); };
        } else if (cfg.borel_curve == "linear") {
            lo = cfg.grid.r_min;
            hi = cfg.grid.r_max;
            curve = [](double r) { return r; };
        } else if (cfg.borel_curve == "double-exp") {
            lo = std::min(0.5, 0.5 * (cfg.grid.r_min + cfg.grid.r_max));
            hi = std::min(5.0, cfg.grid.r_max);
            curve = [](double r) { return std::exp(std::exp(r)); };
        } else {
            throw ConfigError("unknown borel.curve '" + cfg.borel_curve + "'");
        }
        if (!(lo < hi)) throw ConfigError("borel curve domain is empty for this grid");
        const std::vector<double> bgrid = make_grid(lo, hi, 600, false);
        std::vector<double> h(bgrid.size());
        for (size_t i = 0; i < bgrid.size(); ++i) h[i] = curve(bgrid[i]);
        const BorelVerdict v =
            borel_growth_check(bgrid, h, gamma, cfg.delta, cfg.exceptional_budget);
        all_pass = all_pass && v.pass;
        verdicts["borel"] = {{"curve", cfg.borel_curve},
                             {"gamma_measure_full", v.gamma_measure_full},
                             {"gamma_measure_coarse", v.gamma_measure_coarse},
                             {"exceptional_count", v.exceptional.size()},
                             {"budget", v.budget},
                             {"pass", v.pass}};
    }
    if (has_check(cfg, "oracle")) {
        BmConfig bm;
        bm.surface = &surface;
        bm.n_paths = cfg.oracle_paths;
        bm.step = cfg.oracle_step;
        bm.seed = cfg.seed;
        bm.threads = cfg.threads;
        bm.r_exit = cfg.oracle_radius.value_or(
            0.8 * std::min(1.0, std::min(surface.s_radius(), cfg.grid.r_max)));
        auto u = [](Complex w) { return std::norm(w); };
        auto lap_u = [](Complex) { return 4.0; };
        const DynkinComparison dyn = dynkin_check(u, lap_u, bm, cfg.tol);
        const ExitSamples exits = sample_exits(bm);
        const double ks = ks_uniformity_statistic(exits.angles);
        const double ks_crit =
            1.63 / std::sqrt(std::max<double>(1.0, static_cast<double>(bm.n_paths)));
        const double chi2 = chi_square_uniform(exits.angles, 36);
        const double chi2_crit = 57.342; // 0.99 quantile, 35 degrees of freedom
        const bool pass = dyn.lhs_vs_rhs < std::max(1e-6, 20.0 * cfg.tol) &&
                          dyn.mc_vs_lhs_sigmas <= 3.0 + 1e-9 && ks < ks_crit &&
                          chi2 < chi2_crit && dyn.truncated == 0;
        all_pass = all_pass && pass;
        report["oracle"] = {{"paths", dyn.paths},
                            {"truncated", dyn.truncated},
                            {"exit_radius", bm.r_exit},
                            {"dynkin_lhs", dyn.lhs_analytic},
                            {"dynkin_rhs", dyn.rhs_analytic},
                            {"dynkin_mc", dyn.mc_estimate},
                            {"mc_std_error", dyn.mc_std_error},
                            {"lhs_vs_rhs", dyn.lhs_vs_rhs},
                            {"mc_vs_lhs_sigmas", dyn.mc_vs_lhs_sigmas},
                            {"ks_statistic", ks},
                            {"ks_critical", ks_crit},
                            {"chi_square_36_bins", chi2},
                            {"chi_square_critical", chi2_crit},
                            {"occupation", exits.occupation},
                            {"pass", pass}};
    }
    report["verdicts"] = std::move(verdicts);

    const auto t_end = std::chrono::steady_clock::now();
    report["stats"] = {
        {"wall_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(t_end - t_start).count()},
        {"rows", rows.size()}};

    // --- outputs -------------------------------------------------------------
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    outcome.csv_path = (fs::path(cfg.out_dir) / "rows.csv").string();
    write_text_file(outcome.csv_path, rows_to_csv(rows));

    {
        std::vector<PlotSeries> series;
        PlotSeries t_series{"T", {}, {}};
        for (const NevanlinnaRow& row : rows) {
            if (!row.ok) continue;
            t_series.x.push_back(row.r);
            t_series.y.push_back(row.T_ahlfors);
        }
        series.push_back(std::move(t_series));
        for (size_t j = 0; j < targets.size(); ++j) {
            PlotSeries m_series{"m(" + target_label(targets[j]) + ")", {}, {}};
            PlotSeries n_series{"N(" + target_label(targets[j]) + ")", {}, {}};
            for (const NevanlinnaRow& row : rows) {
                if (!row.ok) continue;
                m_series.x.push_back(row.r);
                m_series.y.push_back(row.targets[j].m);
                n_series.x.push_back(row.r);
                n_series.y.push_back(row.targets[j].N);
            }
            series.push_back(std::move(m_series));
            series.push_back(std::move(n_series));
        }
        write_text_file((fs::path(cfg.out_dir) / "plot_tmn.svg").string(),
                        render_svg_plot("characteristic, proximity, counting", "r", "value",
                                        series));
    }
    if (has_check(cfg, "defects")) {
        std::vector<PlotSeries> series;
        for (size_t j = 0; j < targets.size(); ++j) {
            PlotSeries s{"Nbar/T(" + target_label(targets[j]) + ")", {}, {}};
            for (const NevanlinnaRow& row : rows) {
                if (!row.ok) continue;
                s.x.push_back(row.r);
                s.y.push_back(row.targets[j].Nbar / std::max(row.T_ahlfors, 1e-300));
            }
            series.push_back(std::move(s));
        }
        write_text_file((fs::path(cfg.out_dir) / "plot_defect_ratio.svg").string(),
                        render_svg_plot("defect ratio curves", "r", "Nbar / T", series));
    }
    if (has_check(cfg, "smt") || has_check(cfg, "smt-curvature")) {
        const Json& v = report["verdicts"].contains("smt")
                            ? report["verdicts"]["smt"]
                            : report["verdicts"]["smt-curvature"];
        PlotSeries s{"slack", v["grid"].get<std::vector<double>>(),
                     v["slack"].get<std::vector<double>>()};
        write_text_file((fs::path(cfg.out_dir) / "plot_smt_slack.svg").string(),
                        render_svg_plot("second main theorem slack", "r", "rhs - lhs", {s}));
    }

    outcome.report_path = (fs::path(cfg.out_dir) / "report.json").string();
    write_text_file(outcome.report_path, report.dump(2) + "\n");

    outcome.report = std::move(report);
    outcome.exit_code = all_pass ? 0 : 2;
    return outcome;
}

std::string catalog_listing(const std::string& filter) {
    auto matches = [&](const CatalogEntry& e) {
        if (filter.empty()) return true;
        return e.id.find(filter) != std::string::npos ||
               e.summary.find(filter) != std::string::npos;
    };
    std::ostringstream out;
    out << "surfaces:\n";
    for (const CatalogEntry& e : catalog_surfaces())
        if (matches(e)) out << "  " << e.id << "  -  " << e.summary << "\n";
    out << "functions:\n";
    for (const CatalogEntry& e : catalog_functions())
        if (matches(e)) out << "  " << e.id << "  -  " << e.summary << "\n";
    return out.str();
}

} // namespace nevlab
