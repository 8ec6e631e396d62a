#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "susd/checks.hpp"
#include "susd/csvio.hpp"
#include "susd/engine.hpp"
#include "susd/errors.hpp"
#include "susd/scenario.hpp"
#include "susd/theory.hpp"

namespace {

namespace fs = std::filesystem;
using namespace susd;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;

// SUSD_LOG_LEVEL: quiet|info|debug (or 0|1|2), default info.
int log_level() {
    static const int level = [] {
        const char* raw = std::getenv("SUSD_LOG_LEVEL");
        if (!raw) return 1;
        const std::string v(raw);
        if (v == "quiet" || v == "0") return 0;
        if (v == "debug" || v == "2") return 2;
        return 1;
    }();
    return level;
}

void info(const std::string& message) {
    if (log_level() >= 1) std::cerr << "[susd] " << message << "\n";
}

void debug(const std::string& message) {
    if (log_level() >= 2) std::cerr << "[susd] " << message << "\n";
}

struct LoadedRun {
    Scenario scenario;
    TrajectoryLog log;
};

// A log directory is recognized by its resolved_scenario.json; a plain path
// is parsed as a scenario and simulated fresh.
LoadedRun load_run(const std::string& path) {
    LoadedRun run;
    if (fs::is_directory(path)) {
        const fs::path dir(path);
        run.scenario = load_scenario((dir / "resolved_scenario.json").string());
        debug("loaded scenario " + run.scenario.name + " from log directory");
        run.log = parse_trajectory_csv(read_text_file((dir / "trajectory.csv").string()));
        info("read " + std::to_string(run.log.rows.size()) + " rows from " + path);
    } else {
        run.scenario = load_scenario(path);
        info("simulating " + run.scenario.name);
        RunResult result = run_simulation(run.scenario.config, run.scenario.field,
                                          run.scenario.graph);
        info("finished after " + std::to_string(result.steps_executed) + " steps");
        run.log = std::move(result.log);
    }
    return run;
}

const char* reason_label(StopReason reason) {
    return reason == StopReason::ThresholdMet ? "threshold" : "horizon";
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 long seed_override) {
    Scenario scenario = load_scenario(scenario_path);
    if (seed_override >= 0) {
        scenario.config.seed = static_cast<std::uint64_t>(seed_override);
        debug("seed overridden to " + std::to_string(seed_override));
    }

    info("simulating " + scenario.name);
    const RunResult result = run_simulation(scenario.config, scenario.field, scenario.graph);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_text_file((dir / "trajectory.csv").string(), trajectory_csv(result.log));
    write_text_file((dir / "resolved_scenario.json").string(), scenario_to_json(scenario));
    if (scenario.diagnostics_enabled) {
        debug("computing per-step diagnostics");
        const auto diagnostics =
            compute_diagnostics(result.log, scenario.field, scenario.graph,
                                scenario.config.gains);
        write_text_file((dir / "diagnostics.csv").string(),
                        diagnostics_csv(result.log, diagnostics));
    }

    const StepRecord& last = result.log.rows.back();
    const double final_z_c = scenario.field.value(local_center(last.positions));
    char summary[256];
    std::snprintf(summary, sizeof(summary), "%s: steps=%ld reason=%s final_z_c=%.6g out=%s",
                  scenario.name.c_str(), result.steps_executed, reason_label(result.reason),
                  final_z_c, out_dir.c_str());
    std::cout << summary << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& path) {
    const LoadedRun run = load_run(path);
    const std::vector<CheckResult> results = run_checks(run.scenario, run.log);
    std::size_t failed = 0;
    for (const CheckResult& r : results) {
        std::cout << "[" << status_label(r.status) << "] " << r.name;
        if (!r.detail.empty()) std::cout << ": " << r.detail;
        std::cout << "\n";
        if (r.status == CheckStatus::Fail) ++failed;
    }
    if (failed > 0) {
        std::cout << std::to_string(failed) << " check(s) failed\n";
        return kExitCheckFailed;
    }
    std::cout << "all checks passed (" << results.size() << " run)\n";
    return kExitOk;
}

void print_bound(const char* name, double value) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-24s %.12g", name, value);
    std::cout << line << "\n";
}

int cmd_bounds(const std::string& path) {
    const LoadedRun run = load_run(path);
    const Scenario& scenario = run.scenario;
    const BoundsReport report =
        compute_bounds(run.log, scenario.field, scenario.graph, scenario.config.gains,
                       scenario.config.epsilon, scenario.bound_inputs);

    std::cout << "bounds for " << scenario.name << " (window starts at row "
              << report.window_begin << " of " << run.log.rows.size() << ")\n";
    print_bound("mu1_formula_max", report.mu1_formula_max);
    print_bound("mu2_formula_min", report.mu2_formula_min);
    print_bound("grad_floor", report.grad_floor);
    print_bound("grad_ceil", report.grad_ceil);
    print_bound("grad_floor_local", report.grad_floor_local);
    print_bound("grad_ceil_local", report.grad_ceil_local);
    print_bound("gap_floor", report.gap_floor);
    print_bound("gap_ceil", report.gap_ceil);
    print_bound("gap_floor_local", report.gap_floor_local);
    print_bound("gap_ceil_local", report.gap_ceil_local);
    print_bound("epsilon_d", report.epsilon_d_value);
    print_bound("epsilon_star", report.epsilon_star_value);
    print_bound("epsilon_configured", scenario.config.epsilon);
    std::cout << "epsilon <= epsilon_d:    " << (report.epsilon_respects_d ? "yes" : "no")
              << "\n";
    std::cout << "epsilon <= epsilon_star: " << (report.epsilon_respects_star ? "yes" : "no")
              << "\n";
    print_bound("nu_bar", report.nu_bar);
    print_bound("nu_bar_local", report.nu_bar_local);
    print_bound("e_bar", report.e_bar);
    print_bound("eps3", scenario.bound_inputs.eps3.value_or(report.eps3_measured));
    print_bound("eps4", scenario.bound_inputs.eps4.value_or(report.eps4_measured));
    std::cout << "eps3/eps4 source:        "
              << (scenario.bound_inputs.eps3 || scenario.bound_inputs.eps4 ? "configured"
                                                                           : "measured")
              << "\n";
    print_bound("strip_bound", report.strip_bound);
    print_bound("strip_bound_incomplete", report.strip_bound_incomplete);
    print_bound("max_abs_level_error", report.max_abs_level_error);
    print_bound("mean_abs_level_error", report.mean_abs_level_error);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed source seeking and level-curve tracking toolkit"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    long seed_override = -1;
    CLI::App* simulate = app.add_subcommand("simulate", "Run a scenario and write CSV logs");
    simulate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("--out", out_dir, "Output directory");
    simulate->add_option("--seed", seed_override, "Override the scenario seed");

    std::string verify_path;
    CLI::App* verify = app.add_subcommand("verify", "Check a scenario run or an existing log");
    verify->add_option("target", verify_path, "Scenario JSON file or log directory")->required();

    std::string bounds_path;
    CLI::App* bounds = app.add_subcommand("bounds", "Evaluate the convergence bounds over a run");
    bounds->add_option("target", bounds_path, "Scenario JSON file or log directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(scenario_path, out_dir, seed_override);
        if (verify->parsed()) return cmd_verify(verify_path);
        if (bounds->parsed()) return cmd_bounds(bounds_path);
    } catch (const ParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitBadInput;
    } catch (const ConfigError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitBadInput;
    } catch (const NumericalError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}
