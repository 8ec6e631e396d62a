#include "susd/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "susd/control.hpp"
#include "susd/errors.hpp"
#include "susd/perception.hpp"
#include "susd/theory.hpp"

namespace susd {

namespace {

constexpr double kReplayTol = 1e-9;
constexpr double kIdentityTol = 1e-10;
constexpr double kPredictorTol = 1e-3;
constexpr double kPredictorGapGate = 0.05;
constexpr double kVirtualStep = 1e-5;

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

std::vector<int> closed_ids(int i, const std::vector<Vec2>& positions,
                            const VisibilityGraph& graph) {
    std::vector<int> ids = graph.neighbors(i, positions);
    ids.insert(std::lower_bound(ids.begin(), ids.end(), i), i);
    return ids;
}

std::vector<Vec2> gather(const std::vector<int>& ids, const std::vector<Vec2>& positions) {
    std::vector<Vec2> members;
    members.reserve(ids.size());
    for (int id : ids) members.push_back(positions[static_cast<std::size_t>(id)]);
    return members;
}

std::vector<std::size_t> sample_rows(std::size_t rows, std::size_t want) {
    std::vector<std::size_t> picks;
    if (rows == 0) return picks;
    const std::size_t stride = std::max<std::size_t>(1, rows / want);
    for (std::size_t s = 0; s < rows; s += stride) picks.push_back(s);
    if (picks.back() != rows - 1) picks.push_back(rows - 1);
    return picks;
}

CheckResult check_frame_validity(const TrajectoryLog& log) {
    CheckResult result{"frame_validity", CheckStatus::Pass, ""};
    for (const StepRecord& row : log.rows) {
        for (std::size_t i = 0; i < row.frames.size(); ++i) {
            const BodyFrame& f = row.frames[i];
            if (!is_finite(row.positions[i]) || !std::isfinite(row.z[i]) || !is_finite(f.q) ||
                !is_finite(f.n) || std::abs(norm(f.q) - 1.0) > 1e-9 ||
                norm(f.n - rotate90(f.q)) > 1e-9) {
                result.status = CheckStatus::Fail;
                result.detail = "bad frame or non-finite state at step " +
                                std::to_string(row.step) + ", agent " + std::to_string(i);
                return result;
            }
        }
    }
    result.detail = std::to_string(log.rows.size()) + " rows";
    return result;
}

CheckResult check_log_replay(const Scenario& scenario, const TrajectoryLog& log) {
    CheckResult result{"log_replay", CheckStatus::Pass, ""};
    const SimConfig& config = scenario.config;
    const ScalarField& field = scenario.field;
    const VisibilityGraph& graph = scenario.graph;
    const std::size_t rows = log.rows.size();
    const std::size_t m = static_cast<std::size_t>(config.agent_count);

    auto fail = [&](std::size_t step, const std::string& what) {
        result.status = CheckStatus::Fail;
        result.detail = what + " at step " + std::to_string(step);
        return result;
    };

    for (const StepRecord& row : log.rows)
        if (row.positions.size() != m) return fail(static_cast<std::size_t>(row.step),
                                                   "agent count mismatch");

    // Row 0 restates the resolved initial condition.
    const std::vector<Vec2> initial = resolve_initial_positions(config);
    for (std::size_t i = 0; i < m; ++i)
        if (norm(log.rows[0].positions[i] - initial[i]) > kReplayTol)
            return fail(0, "initial position mismatch");

    std::vector<Vec2> init_q(m);
    if (config.initial_qhat) {
        const Vec2 q0 = *config.initial_qhat / norm(*config.initial_qhat);
        for (std::size_t i = 0; i < m; ++i) init_q[i] = q0;
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            const std::vector<int> ids = closed_ids(static_cast<int>(i), initial, graph);
            init_q[i] = exact_principal_axes(covariance(gather(ids, initial)),
                                             config.initial_qhat_reference)
                            .q;
        }
    }
    if (rows == 1) {
        for (std::size_t i = 0; i < m; ++i)
            if (norm(log.rows[0].frames[i].q - init_q[i]) > kReplayTol)
                return fail(0, "initial estimate mismatch");
    }

    const double duration = config.dt / config.epsilon;
    for (std::size_t s = 0; s < rows; ++s) {
        const StepRecord& row = log.rows[s];
        for (std::size_t i = 0; i < m; ++i) {
            const double z = field.value(row.positions[i]);
            if (std::abs(row.z[i] - z) > kReplayTol * std::max(1.0, std::abs(z)))
                return fail(static_cast<std::size_t>(row.step),
                            "measurement mismatch for agent " + std::to_string(i));
        }

        // Every loop row carries frames one perception flow past the previous
        // estimate (the initial one for row 0); the trailing snapshot reuses
        // the last flow unchanged.
        if (s + 1 < rows) {
            for (std::size_t i = 0; i < m; ++i) {
                const Vec2 warm = s == 0 ? init_q[i] : log.rows[s - 1].frames[i].q;
                const std::vector<int> ids =
                    closed_ids(static_cast<int>(i), row.positions, graph);
                const SymMat2 c = covariance(gather(ids, row.positions));
                Vec2 q = oja_flow(c, warm, duration, config.oja_substep);
                if (dot(q, warm) < 0.0) q = -q;
                if (norm(row.frames[i].q - q) > kReplayTol)
                    return fail(static_cast<std::size_t>(row.step),
                                "estimate mismatch for agent " + std::to_string(i));
            }
        }
        if (s + 1 == rows && rows >= 2) {
            const StepRecord& prev = log.rows[s - 1];
            for (std::size_t i = 0; i < m; ++i)
                if (norm(row.frames[i].q - prev.frames[i].q) > kReplayTol)
                    return fail(static_cast<std::size_t>(row.step),
                                "trailing snapshot frame mismatch for agent " + std::to_string(i));
        }

        // Positions advance together under the logged frames.
        if (s + 1 < rows) {
            const StepRecord& next = log.rows[s + 1];
            for (std::size_t i = 0; i < m; ++i) {
                Vec2 u = susd_control(row.z[i], config.gains, row.frames[i]);
                if (config.gains.kf != 0.0 ||
                    (config.formation_along_n && config.gains.kfn != 0.0)) {
                    std::vector<Vec2> neighbor_positions;
                    for (int j : graph.neighbors(static_cast<int>(i), row.positions))
                        neighbor_positions.push_back(row.positions[static_cast<std::size_t>(j)]);
                    u += formation_term(row.positions[i], neighbor_positions, row.frames[i],
                                        config.gains.kf, config.gains.spacing);
                    if (config.formation_along_n)
                        u += formation_term_n(row.positions[i], neighbor_positions, row.frames[i],
                                              config.gains.kfn, config.gains.spacing);
                }
                if (config.clamp_speed_enabled) u = clamp_speed(u, config.max_speed);
                const Vec2 predicted = row.positions[i] + config.dt * u;
                if (norm(next.positions[i] - predicted) > kReplayTol)
                    return fail(static_cast<std::size_t>(row.step),
                                "position advance mismatch for agent " + std::to_string(i));
            }
        }
    }
    result.detail = std::to_string(rows) + " rows replayed";
    return result;
}

CheckResult check_connectivity(const Scenario& scenario, const TrajectoryLog& log) {
    CheckResult result{"connectivity", CheckStatus::Pass, ""};
    for (const StepRecord& row : log.rows) {
        if (!scenario.graph.is_connected(row.positions)) {
            result.status = CheckStatus::Fail;
            result.detail = "graph disconnected at step " + std::to_string(row.step);
            return result;
        }
    }
    result.detail = std::to_string(log.rows.size()) + " rows";
    return result;
}

CheckResult check_covariance_psd(const Scenario& scenario, const TrajectoryLog& log) {
    CheckResult result{"covariance_psd", CheckStatus::Pass, ""};
    for (const std::size_t s : sample_rows(log.rows.size(), 50)) {
        const StepRecord& row = log.rows[s];
        for (int i = 0; i < scenario.config.agent_count; ++i) {
            const std::vector<int> ids = closed_ids(i, row.positions, scenario.graph);
            const PrincipalAxes axes = exact_principal_axes(
                covariance(gather(ids, row.positions)), row.frames[static_cast<std::size_t>(i)].q);
            if (axes.lambda_n < -1e-12 * std::max(1.0, axes.lambda_q)) {
                result.status = CheckStatus::Fail;
                result.detail = "negative scatter eigenvalue at step " + std::to_string(row.step) +
                                ", agent " + std::to_string(i);
                return result;
            }
        }
    }
    result.detail = "sampled rows clean";
    return result;
}

// Shared true axes for one row, all signed against one common direction so
// whole-swarm and per-agent forms are compared in the same orientation.
std::vector<PrincipalAxes> common_axes(const Scenario& scenario, const StepRecord& row) {
    std::vector<Vec2> refs(row.frames.size(), row.frames[0].q);
    return exact_axes_all(row.positions, scenario.graph, refs);
}

CheckResult check_cross_lemma(const Scenario& scenario, const TrajectoryLog& log) {
    CheckResult result{"cross_lemma_rates", CheckStatus::Pass, ""};
    double worst = 0.0;
    std::size_t samples = 0;
    for (const std::size_t s : sample_rows(log.rows.size(), 25)) {
        const StepRecord& row = log.rows[s];
        std::vector<Vec2> refs;
        for (const auto& f : row.frames) refs.push_back(f.q);
        const std::vector<PrincipalAxes> axes = exact_axes_all(row.positions, scenario.graph, refs);
        std::vector<Vec2> velocities(row.positions.size());
        for (std::size_t k = 0; k < row.positions.size(); ++k)
            velocities[k] = scenario.config.gains.k1 *
                                (scenario.field.value(row.positions[k]) -
                                 scenario.config.gains.z_desired) *
                                axes[k].n +
                            scenario.config.gains.k2 * axes[k].q;
        for (int i = 0; i < scenario.config.agent_count; ++i) {
            if (!(axes[static_cast<std::size_t>(i)].gap() > kPredictorGapTol)) continue;
            const FrameRate from_control = predict_frame_rate_susd(
                i, row.positions, scenario.field, scenario.graph, scenario.config.gains, axes);
            const FrameRate from_velocities =
                predict_frame_rate_general(i, row.positions, velocities, scenario.graph,
                                           axes[static_cast<std::size_t>(i)].q);
            const double scale = std::max(1.0, norm(from_velocities.dq));
            worst = std::max(worst, norm(from_control.dq - from_velocities.dq) / scale);
            worst = std::max(worst, norm(from_control.dn - from_velocities.dn) / scale);
            ++samples;
        }
    }
    if (samples == 0) {
        result.status = CheckStatus::Skip;
        result.detail = "no usable samples (degenerate scatter)";
    } else if (worst > kIdentityTol) {
        result.status = CheckStatus::Fail;
        result.detail = "max deviation " + fmt(worst) + " over " + std::to_string(samples) +
                        " samples";
    } else {
        result.detail = "max deviation " + fmt(worst) + " over " + std::to_string(samples) +
                        " samples";
    }
    return result;
}

CheckResult check_complete_reduction(const Scenario& scenario, const TrajectoryLog& log) {
    CheckResult result{"complete_reduction", CheckStatus::Skip, "needs a complete graph"};
    if (scenario.graph.kind() != GraphKind::Complete) return result;
    double worst = 0.0;
    std::size_t samples = 0;
    for (const std::size_t s : sample_rows(log.rows.size(), 25)) {
        const StepRecord& row = log.rows[s];
        const std::vector<PrincipalAxes> axes = common_axes(scenario, row);
        if (!(axes[0].gap() > kPredictorGapTol)) continue;
        CompleteFrameRate whole;
        try {
            whole = predict_frame_rate_complete(row.positions, scenario.field,
                                                scenario.config.gains, row.frames[0].q);
        } catch (const DegenerateInputError&) {
            continue;
        }
        const FrameRate local = predict_frame_rate_susd(0, row.positions, scenario.field,
                                                        scenario.graph, scenario.config.gains,
                                                        axes);
        const double scale = std::max(1.0, norm(whole.rate.dq));
        worst = std::max(worst, norm(whole.rate.dq - local.dq) / scale);
        worst = std::max(worst, norm(whole.rate.dn - local.dn) / scale);
        ++samples;
    }
    if (samples == 0) {
        result.status = CheckStatus::Skip;
        result.detail = "no usable samples (degenerate scatter or critical point)";
    } else if (worst > kIdentityTol) {
        result.status = CheckStatus::Fail;
        result.detail = "max deviation " + fmt(worst) + " over " + std::to_string(samples) +
                        " samples";
    } else {
        result.status = CheckStatus::Pass;
        result.detail = "max deviation " + fmt(worst) + " over " + std::to_string(samples) +
                        " samples";
    }
    return result;
}

CheckResult check_projector_identity(const Scenario& scenario, const TrajectoryLog& log) {
    CheckResult result{"projector_identity", CheckStatus::Skip, "needs a complete graph"};
    if (scenario.graph.kind() != GraphKind::Complete) return result;
    double worst = 0.0;
    std::size_t samples = 0;
    for (const std::size_t s : sample_rows(log.rows.size(), 25)) {
        const StepRecord& row = log.rows[s];
        CompleteFrameRate whole;
        try {
            whole = predict_frame_rate_complete(row.positions, scenario.field,
                                                scenario.config.gains, row.frames[0].q);
        } catch (const DegenerateInputError&) {
            continue;
        }
        const double scale = std::max(1.0, norm(whole.rate.dn));
        worst = std::max(worst, norm(whole.rate.dn - whole.dn_projector) / scale);
        ++samples;
    }
    if (samples == 0) {
        result.status = CheckStatus::Skip;
        result.detail = "no usable samples (degenerate scatter or critical point)";
    } else if (worst > kIdentityTol) {
        result.status = CheckStatus::Fail;
        result.detail = "max deviation " + fmt(worst) + " over " + std::to_string(samples) +
                        " samples";
    } else {
        result.status = CheckStatus::Pass;
        result.detail = "max deviation " + fmt(worst) + " over " + std::to_string(samples) +
                        " samples";
    }
    return result;
}

bool formation_active(const SimConfig& config) {
    return config.gains.kf != 0.0 ||
           (config.formation_along_n && config.gains.kfn != 0.0);
}

CheckResult check_eigenvalue_conservation(const Scenario& scenario, const TrajectoryLog& log) {
    CheckResult result{"eigenvalue_conservation", CheckStatus::Skip,
                       "needs a complete graph without circulation, formation or clamping"};
    if (scenario.graph.kind() != GraphKind::Complete || scenario.config.gains.k2 != 0.0 ||
        formation_active(scenario.config) || scenario.config.clamp_speed_enabled)
        return result;
    const PrincipalAxes first =
        exact_principal_axes(covariance(log.rows[0].positions), log.rows[0].frames[0].q);
    double max_drift = 0.0;
    for (const StepRecord& row : log.rows) {
        const PrincipalAxes axes =
            exact_principal_axes(covariance(row.positions), row.frames[0].q);
        max_drift = std::max(max_drift,
                             std::abs(axes.lambda_q - first.lambda_q) / first.lambda_q);
        if (!(axes.lambda_n < axes.lambda_q)) {
            result.status = CheckStatus::Fail;
            result.detail = "minor variance reached the major one at step " +
                            std::to_string(row.step);
            return result;
        }
    }
    if (max_drift > 0.02) {
        result.status = CheckStatus::Fail;
        result.detail = "major variance drifted " + fmt(100.0 * max_drift) + "%";
    } else {
        result.status = CheckStatus::Pass;
        result.detail = "max major-variance drift " + fmt(100.0 * max_drift) + "%";
    }
    return result;
}

CheckResult check_dispersion(const Scenario& scenario, const TrajectoryLog& log) {
    CheckResult result{"dispersion", CheckStatus::Skip,
                       "needs a complete graph without formation or clamping"};
    if (scenario.graph.kind() != GraphKind::Complete || formation_active(scenario.config) ||
        scenario.config.clamp_speed_enabled)
        return result;
    const PrincipalAxes first =
        exact_principal_axes(covariance(log.rows[0].positions), log.rows[0].frames[0].q);
    const double limit = 3.0 * std::sqrt(std::max(first.lambda_q, 0.0));
    double worst = 0.0;
    for (const StepRecord& row : log.rows) {
        for (std::size_t a = 0; a < row.positions.size(); ++a)
            for (std::size_t b = a + 1; b < row.positions.size(); ++b)
                worst = std::max(worst, norm(row.positions[a] - row.positions[b]));
    }
    if (worst > limit) {
        result.status = CheckStatus::Fail;
        result.detail = "diameter " + fmt(worst) + " exceeded limit " + fmt(limit);
    } else {
        result.status = CheckStatus::Pass;
        result.detail = "max diameter " + fmt(worst) + " within " + fmt(limit);
    }
    return result;
}

CheckResult check_predictor_accuracy(const Scenario& scenario, const TrajectoryLog& log) {
    CheckResult result{"predictor_accuracy", CheckStatus::Pass, ""};
    double worst = 0.0;
    std::size_t samples = 0;
    for (const std::size_t s : sample_rows(log.rows.size(), 25)) {
        const StepRecord& row = log.rows[s];
        std::vector<Vec2> refs;
        for (const auto& f : row.frames) refs.push_back(f.q);
        const std::vector<PrincipalAxes> axes = exact_axes_all(row.positions, scenario.graph, refs);
        std::vector<Vec2> velocities(row.positions.size());
        for (std::size_t k = 0; k < row.positions.size(); ++k)
            velocities[k] = scenario.config.gains.k1 *
                                (scenario.field.value(row.positions[k]) -
                                 scenario.config.gains.z_desired) *
                                axes[k].n +
                            scenario.config.gains.k2 * axes[k].q;
        std::vector<Vec2> plus(row.positions.size());
        std::vector<Vec2> minus(row.positions.size());
        for (std::size_t k = 0; k < row.positions.size(); ++k) {
            plus[k] = row.positions[k] + kVirtualStep * velocities[k];
            minus[k] = row.positions[k] - kVirtualStep * velocities[k];
        }
        for (int i = 0; i < scenario.config.agent_count; ++i) {
            const PrincipalAxes& own = axes[static_cast<std::size_t>(i)];
            if (!(own.gap() > kPredictorGapGate)) continue;
            const FrameRate pred = predict_frame_rate_susd(
                i, row.positions, scenario.field, scenario.graph, scenario.config.gains, axes);
            const std::vector<int> ids = closed_ids(i, row.positions, scenario.graph);
            const PrincipalAxes ap =
                exact_principal_axes(covariance(gather(ids, plus)), own.q);
            const PrincipalAxes am =
                exact_principal_axes(covariance(gather(ids, minus)), own.q);
            const Vec2 dq_fd = (ap.q - am.q) / (2.0 * kVirtualStep);
            worst = std::max(worst, norm(pred.dq - dq_fd) / std::max(norm(dq_fd), 1e-6));
            ++samples;
        }
    }
    if (samples == 0) {
        result.status = CheckStatus::Skip;
        result.detail = "no samples above the eigengap gate";
    } else if (worst > kPredictorTol) {
        result.status = CheckStatus::Fail;
        result.detail = "max relative deviation " + fmt(worst) + " over " +
                        std::to_string(samples) + " samples";
    } else {
        result.detail = "max relative deviation " + fmt(worst) + " over " +
                        std::to_string(samples) + " samples";
    }
    return result;
}

CheckResult check_fast_flow_monotone(const Scenario& scenario, const TrajectoryLog& log) {
    CheckResult result{"fast_flow_monotone", CheckStatus::Pass, ""};
    const double duration = scenario.config.dt / scenario.config.epsilon;
    std::size_t samples = 0;
    std::vector<Vec2> trace;
    for (const std::size_t s : sample_rows(log.rows.size(), 25)) {
        if (s == 0 || s + 1 == log.rows.size()) continue;
        const StepRecord& row = log.rows[s];
        const StepRecord& prev = log.rows[s - 1];
        for (int i = 0; i < scenario.config.agent_count; ++i) {
            const std::vector<int> ids = closed_ids(i, row.positions, scenario.graph);
            const SymMat2 c = covariance(gather(ids, row.positions));
            const PrincipalAxes axes =
                exact_principal_axes(c, row.frames[static_cast<std::size_t>(i)].q);
            if (!(axes.gap() > kPredictorGapTol)) continue;
            const Vec2 warm = prev.frames[static_cast<std::size_t>(i)].q;
            if (dot(warm, axes.q) <= 0.0) continue;
            oja_flow_trace(c, warm, duration, scenario.config.oja_substep, &trace);
            double last = psi(axes.q, warm);
            for (const Vec2& q : trace) {
                const double now = psi(axes.q, q);
                if (now > last + 1e-12) {
                    result.status = CheckStatus::Fail;
                    result.detail = "alignment error rose within step " +
                                    std::to_string(row.step) + ", agent " + std::to_string(i);
                    return result;
                }
                last = now;
            }
            ++samples;
        }
    }
    if (samples == 0) {
        result.status = CheckStatus::Skip;
        result.detail = "no usable samples";
    } else {
        result.detail = std::to_string(samples) + " step flows monotone";
    }
    return result;
}

// Reduced-model residuals, coarse thresholds: at simulation step sizes the
// finite differences carry discretization error, so these only flag gross
// disagreement; the tight tolerances live in the unit suites at small dt.
CheckResult check_slow_residual(const ResidualReport& report) {
    CheckResult result{"slow_residual", CheckStatus::Skip, ""};
    if (!report.theta_applicable) {
        result.detail = "reduction stated only for complete graphs or pure source seeking";
        return result;
    }
    if (report.theta_samples == 0) {
        result.detail = "no samples above the rate floor";
        return result;
    }
    result.status = report.max_theta_residual > 0.5 ? CheckStatus::Fail : CheckStatus::Pass;
    result.detail = "max relative residual " + fmt(report.max_theta_residual) + " over " +
                    std::to_string(report.theta_samples) + " samples, max |eta| " +
                    fmt(report.max_eta);
    return result;
}

CheckResult check_fast_residual(const ResidualReport& report) {
    CheckResult result{"fast_residual", CheckStatus::Skip, "no usable samples"};
    if (report.psi_samples == 0) return result;
    result.status = report.max_psi_deviation > 0.1 ? CheckStatus::Fail : CheckStatus::Pass;
    result.detail = "max deviation from the exact boundary solution " +
                    fmt(report.max_psi_deviation) + " over " +
                    std::to_string(report.psi_samples) + " step flows";
    return result;
}

CheckResult check_termination(const Scenario& scenario, const TrajectoryLog& log) {
    CheckResult result{"termination", CheckStatus::Pass, ""};
    const SimConfig& config = scenario.config;
    const StepRecord& last = log.rows.back();
    auto all_below = [&](const StepRecord& row) {
        for (double z : row.z)
            if (!(z < config.z_threshold)) return false;
        return true;
    };
    if (config.termination == TerminationMode::FixedHorizon) {
        if (last.step != config.max_steps ||
            log.rows.size() != static_cast<std::size_t>(config.max_steps) + 1) {
            result.status = CheckStatus::Fail;
            result.detail = "fixed horizon log ended at step " + std::to_string(last.step) +
                            " of " + std::to_string(config.max_steps);
            return result;
        }
        result.detail = "horizon of " + std::to_string(config.max_steps) + " steps";
        return result;
    }
    for (std::size_t s = 0; s + 1 < log.rows.size(); ++s) {
        if (all_below(log.rows[s])) {
            result.status = CheckStatus::Fail;
            result.detail = "threshold already met at step " + std::to_string(log.rows[s].step) +
                            " but the run continued";
            return result;
        }
    }
    if (!all_below(last) && last.step != config.max_steps) {
        result.status = CheckStatus::Fail;
        result.detail = "run stopped at step " + std::to_string(last.step) +
                        " with the threshold unmet and horizon unreached";
        return result;
    }
    result.detail = all_below(last) ? "threshold met at step " + std::to_string(last.step)
                                    : "horizon reached before the threshold";
    return result;
}

}  // namespace

std::vector<CheckResult> run_checks(const Scenario& scenario, const TrajectoryLog& log) {
    if (log.rows.empty()) throw DegenerateInputError("run_checks: empty log");
    std::vector<CheckResult> results;
    results.push_back(check_frame_validity(log));
    results.push_back(check_log_replay(scenario, log));
    results.push_back(check_connectivity(scenario, log));
    results.push_back(check_covariance_psd(scenario, log));
    results.push_back(check_cross_lemma(scenario, log));
    results.push_back(check_complete_reduction(scenario, log));
    results.push_back(check_projector_identity(scenario, log));
    results.push_back(check_eigenvalue_conservation(scenario, log));
    results.push_back(check_dispersion(scenario, log));
    results.push_back(check_predictor_accuracy(scenario, log));
    results.push_back(check_fast_flow_monotone(scenario, log));
    const ResidualReport residuals =
        slow_fast_residuals(log, scenario.field, scenario.graph, scenario.config.gains,
                            scenario.config.epsilon, scenario.config.oja_substep);
    results.push_back(check_slow_residual(residuals));
    results.push_back(check_fast_residual(residuals));
    results.push_back(check_termination(scenario, log));
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (r.status == CheckStatus::Fail) return false;
    return true;
}

const char* status_label(CheckStatus status) {
    switch (status) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Skip: return "SKIP";
    }
    return "????";
}

}  // namespace susd
