#include "nevlab/errors.hpp"
#include "nevlab/runner.hpp"
#include "nevlab/version.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int run_with_config(nevlab::ExperimentConfig cfg) {
    const nevlab::RunOutcome outcome = nevlab::run_experiment(cfg);
    for (const auto& [check, verdict] : outcome.report["verdicts"].items()) {
        if (verdict.is_array()) {
            for (const auto& v : verdict)
                std::cout << check << " (" << v.value("target", std::string("?"))
                          << "): " << (v.value("pass", false) ? "PASS" : "FAIL") << "\n";
        } else {
            std::cout << check << ": " << (verdict.value("pass", false) ? "PASS" : "FAIL")
                      << "\n";
        }
    }
    if (outcome.report.contains("oracle"))
        std::cout << "oracle: "
                  << (outcome.report["oracle"].value("pass", false) ? "PASS" : "FAIL")
                  << "\n";
    std::cout << "report: " << outcome.report_path << "\n";
    return outcome.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nevlab - value distribution laboratory for exhausted surfaces"};
    app.set_version_flag("--version", std::string("nevlab ") + nevlab::kVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir, check_name, filter;
    bool has_seed = false;
    unsigned long long seed = 0;

    CLI::App* run = app.add_subcommand("run", "run the checks enabled in a config file");
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--out", out_dir, "output directory (overrides the config)");
    run->add_option("--seed", seed, "random seed (overrides the config)")
        ->each([&](const std::string&) { has_seed = true; });

    CLI::App* cat = app.add_subcommand("catalog", "list built-in surfaces and functions");
    cat->add_option("filter", filter, "substring filter");

    CLI::App* verify = app.add_subcommand("verify", "run one check from a config file");
    verify->add_option("--check", check_name, "fmt | smt | smt-curvature | defects | calculus | borel | oracle")
        ->required();
    verify->add_option("--config", config_path, "experiment config file")->required();
    verify->add_option("--out", out_dir, "output directory (overrides the config)");
    verify->add_option("--seed", seed, "random seed (overrides the config)")
        ->each([&](const std::string&) { has_seed = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (cat->parsed()) {
            std::cout << nevlab::catalog_listing(filter);
            return 0;
        }
        nevlab::ExperimentConfig cfg = nevlab::ExperimentConfig::load(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (has_seed) cfg.seed = seed;
        if (verify->parsed()) cfg.checks = {check_name};
        return run_with_config(std::move(cfg));
    } catch (const nevlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
