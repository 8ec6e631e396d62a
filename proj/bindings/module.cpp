#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "susd/checks.hpp"
#include "susd/engine.hpp"
#include "susd/errors.hpp"
#include "susd/perception.hpp"
#include "susd/scenario.hpp"
#include "susd/theory.hpp"
#include "susd/vec2.hpp"

namespace py = pybind11;
using namespace susd;

namespace {

using Point = std::pair<double, double>;

Vec2 to_vec(const Point& p) { return {p.first, p.second}; }

Point from_vec(Vec2 v) { return {v.x, v.y}; }

std::vector<Vec2> to_vecs(const std::vector<Point>& points) {
    std::vector<Vec2> out;
    out.reserve(points.size());
    for (const Point& p : points) out.push_back(to_vec(p));
    return out;
}

SymMat2 to_mat(const std::vector<double>& entries) {
    if (entries.size() != 3)
        throw py::value_error("matrix must be [c11, c12, c22]");
    return {entries[0], entries[1], entries[2]};
}

py::dict axes_dict(const PrincipalAxes& axes) {
    py::dict out;
    out["q"] = from_vec(axes.q);
    out["n"] = from_vec(axes.n);
    out["lambda_q"] = axes.lambda_q;
    out["lambda_n"] = axes.lambda_n;
    return out;
}

py::list positions_list(const std::vector<Vec2>& positions) {
    py::list out;
    for (Vec2 r : positions) out.append(from_vec(r));
    return out;
}

py::dict run_dict(const Scenario& scenario, const RunResult& run, bool include_trajectory) {
    py::dict out;
    out["name"] = scenario.name;
    out["steps"] = run.steps_executed;
    out["reason"] = run.reason == StopReason::ThresholdMet ? "threshold" : "horizon";
    const StepRecord& last = run.log.rows.back();
    out["final_positions"] = positions_list(last.positions);
    out["final_z"] = last.z;
    if (include_trajectory) {
        py::list rows;
        for (const StepRecord& row : run.log.rows) {
            py::dict entry;
            entry["step"] = row.step;
            entry["t"] = row.t;
            entry["positions"] = positions_list(row.positions);
            entry["z"] = row.z;
            rows.append(entry);
        }
        out["trajectory"] = rows;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "distributed source seeking and level-curve tracking core";

    m.def(
        "covariance",
        [](const std::vector<Point>& points) {
            const SymMat2 c = covariance(to_vecs(points));
            return std::vector<double>{c.c11, c.c12, c.c22};
        },
        py::arg("points"),
        "Unnormalized 2x2 scatter of the points as [c11, c12, c22].");

    m.def(
        "principal_axes",
        [](const std::vector<Point>& points, const Point& reference) {
            return axes_dict(exact_principal_axes(covariance(to_vecs(points)),
                                                  to_vec(reference)));
        },
        py::arg("points"), py::arg("reference") = Point{1.0, 0.0},
        "Closed-form principal axes of the scatter of the points.");

    m.def(
        "oja_flow",
        [](const std::vector<double>& matrix, const Point& q0, double duration,
           double substep) {
            return from_vec(oja_flow(to_mat(matrix), normalized(to_vec(q0)), duration,
                                     substep));
        },
        py::arg("matrix"), py::arg("q0"), py::arg("duration"), py::arg("substep") = 0.01,
        "Integrate the normalized principal-direction flow from q0.");

    m.def(
        "alignment_error",
        [](const Point& q_true, const Point& q_estimate) {
            return psi(normalized(to_vec(q_true)), normalized(to_vec(q_estimate)));
        },
        py::arg("q_true"), py::arg("q_estimate"),
        "Alignment error 1 - <q_true, q_estimate>.");

    m.def(
        "run_scenario",
        [](const std::string& json_text, bool include_trajectory) {
            const Scenario scenario = parse_scenario(json_text);
            const RunResult run =
                run_simulation(scenario.config, scenario.field, scenario.graph);
            return run_dict(scenario, run, include_trajectory);
        },
        py::arg("json_text"), py::arg("include_trajectory") = false,
        "Run a scenario given as JSON text and return a result summary.");

    m.def(
        "verify_scenario",
        [](const std::string& json_text) {
            const Scenario scenario = parse_scenario(json_text);
            const RunResult run =
                run_simulation(scenario.config, scenario.field, scenario.graph);
            py::list out;
            for (const CheckResult& result : run_checks(scenario, run.log)) {
                py::dict entry;
                entry["name"] = result.name;
                entry["status"] = status_label(result.status);
                entry["detail"] = result.detail;
                out.append(entry);
            }
            return out;
        },
        py::arg("json_text"),
        "Run a scenario and the full self-consistency check suite on its log.");

    m.def(
        "bounds_report",
        [](const std::string& json_text) {
            const Scenario scenario = parse_scenario(json_text);
            const RunResult run =
                run_simulation(scenario.config, scenario.field, scenario.graph);
            const BoundsReport report =
                compute_bounds(run.log, scenario.field, scenario.graph,
                               scenario.config.gains, scenario.config.epsilon,
                               scenario.bound_inputs);
            py::dict out;
            out["mu1_formula_max"] = report.mu1_formula_max;
            out["mu2_formula_min"] = report.mu2_formula_min;
            out["epsilon_d"] = report.epsilon_d_value;
            out["epsilon_star"] = report.epsilon_star_value;
            out["epsilon_respects_d"] = report.epsilon_respects_d;
            out["epsilon_respects_star"] = report.epsilon_respects_star;
            out["nu_bar"] = report.nu_bar;
            out["e_bar"] = report.e_bar;
            out["eps3_measured"] = report.eps3_measured;
            out["eps4_measured"] = report.eps4_measured;
            out["strip_bound"] = report.strip_bound;
            out["strip_bound_incomplete"] = report.strip_bound_incomplete;
            out["max_abs_level_error"] = report.max_abs_level_error;
            out["mean_abs_level_error"] = report.mean_abs_level_error;
            return out;
        },
        py::arg("json_text"),
        "Run a scenario and evaluate the analytic bound formulas on its log.");

    py::register_exception<ParseError>(m, "ParseError");
    py::register_exception<DegenerateInputError>(m, "DegenerateInputError");
}
