#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "susd/checks.hpp"
#include "susd/errors.hpp"
#include "susd/scenario.hpp"

using namespace susd;

namespace {

Scenario complete_seeking_scenario(long max_steps) {
    Scenario s;
    s.name = "checks_complete4";
    s.field = ScalarField::quadratic({0.0, 0.0});
    s.graph = VisibilityGraph::complete(4);
    s.config.agent_count = 4;
    s.config.gains.k1 = 1.0;
    s.config.max_steps = max_steps;
    s.config.initial_positions = {{3.63, 3.59}, {3.17, 3.81}, {2.782, 4.126}, {2.418, 4.474}};
    s.config.initial_qhat = Vec2{-0.8, 0.6};
    return s;
}

Scenario path_tracking_scenario() {
    Scenario s;
    s.name = "checks_path4";
    s.field = ScalarField::quadratic({0.0, 0.0});
    s.graph = VisibilityGraph::static_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    s.config.agent_count = 4;
    s.config.gains.k1 = 2.0;
    s.config.gains.k2 = 0.5;
    s.config.gains.z_desired = 1.0;
    s.config.max_steps = 200;
    s.config.initial_positions.clear();
    for (int k = 0; k < 4; ++k) {
        const double a = -0.3 + 0.2 * k;
        s.config.initial_positions.push_back({1.05 * std::cos(a), 1.05 * std::sin(a)});
    }
    return s;
}

const CheckResult& find_check(const std::vector<CheckResult>& results, const std::string& name) {
    for (const CheckResult& r : results)
        if (r.name == name) return r;
    REQUIRE_MESSAGE(false, "missing check: " << name);
    return results.front();
}

}  // namespace

TEST_CASE("a clean complete-graph seeking run passes every applicable check") {
    const Scenario s = complete_seeking_scenario(150);
    const RunResult run = run_simulation(s.config, s.field, s.graph);
    const std::vector<CheckResult> results = run_checks(s, run.log);

    REQUIRE(results.size() == 14);
    CHECK(all_passed(results));
    for (const char* name : {"frame_validity", "log_replay", "connectivity", "covariance_psd",
                             "cross_lemma_rates", "complete_reduction", "projector_identity",
                             "eigenvalue_conservation", "dispersion", "predictor_accuracy",
                             "fast_flow_monotone", "termination"}) {
        CAPTURE(name);
        const CheckResult& r = find_check(results, name);
        CHECK_MESSAGE(r.status == CheckStatus::Pass, r.name << ": " << r.detail);
    }
    CHECK(find_check(results, "slow_residual").status != CheckStatus::Fail);
    CHECK(find_check(results, "fast_residual").status != CheckStatus::Fail);
}

TEST_CASE("a single-row log is verifiable") {
    const Scenario s = complete_seeking_scenario(0);
    const RunResult run = run_simulation(s.config, s.field, s.graph);
    REQUIRE(run.log.rows.size() == 1);
    const std::vector<CheckResult> results = run_checks(s, run.log);
    CHECK(all_passed(results));
    CHECK(find_check(results, "termination").status == CheckStatus::Pass);
    CHECK(find_check(results, "fast_flow_monotone").status == CheckStatus::Skip);
}

TEST_CASE("incomplete-graph tracking skips the complete-only checks and passes the rest") {
    const Scenario s = path_tracking_scenario();
    const RunResult run = run_simulation(s.config, s.field, s.graph);
    const std::vector<CheckResult> results = run_checks(s, run.log);

    CHECK(all_passed(results));
    for (const char* name : {"complete_reduction", "projector_identity",
                             "eigenvalue_conservation", "dispersion", "slow_residual"}) {
        CAPTURE(name);
        CHECK(find_check(results, name).status == CheckStatus::Skip);
    }
    for (const char* name : {"frame_validity", "log_replay", "connectivity", "covariance_psd",
                             "cross_lemma_rates", "predictor_accuracy", "fast_flow_monotone",
                             "termination"}) {
        CAPTURE(name);
        const CheckResult& r = find_check(results, name);
        CHECK_MESSAGE(r.status == CheckStatus::Pass, r.name << ": " << r.detail);
    }
}

TEST_CASE("corrupted logs are caught") {
    const Scenario s = complete_seeking_scenario(120);
    const RunResult run = run_simulation(s.config, s.field, s.graph);

    SUBCASE("perturbed position breaks replay") {
        TrajectoryLog log = run.log;
        log.rows[60].positions[2].x += 1e-6;
        const auto results = run_checks(s, log);
        CHECK(find_check(results, "log_replay").status == CheckStatus::Fail);
        CHECK_FALSE(all_passed(results));
    }
    SUBCASE("perturbed measurement breaks replay") {
        TrajectoryLog log = run.log;
        log.rows[80].z[0] += 1e-6;
        const auto results = run_checks(s, log);
        CHECK(find_check(results, "log_replay").status == CheckStatus::Fail);
    }
    SUBCASE("non-unit estimate breaks frame validity") {
        TrajectoryLog log = run.log;
        BodyFrame& f = log.rows[50].frames[1];
        f.q = 1.01 * f.q;
        f.n = rotate90(f.q);
        const auto results = run_checks(s, log);
        CHECK(find_check(results, "frame_validity").status == CheckStatus::Fail);
    }
    SUBCASE("left-handed frame breaks frame validity") {
        TrajectoryLog log = run.log;
        BodyFrame& f = log.rows[50].frames[0];
        f.n = -f.n;
        const auto results = run_checks(s, log);
        CHECK(find_check(results, "frame_validity").status == CheckStatus::Fail);
    }
    SUBCASE("truncated horizon breaks termination") {
        TrajectoryLog log = run.log;
        log.rows.pop_back();
        const auto results = run_checks(s, log);
        CHECK(find_check(results, "termination").status == CheckStatus::Fail);
    }
    SUBCASE("empty log is rejected") {
        TrajectoryLog log;
        log.dt = s.config.dt;
        CHECK_THROWS_AS(run_checks(s, log), DegenerateInputError);
    }
}

TEST_CASE("threshold runs stop exactly when every reading drops below") {
    Scenario s = complete_seeking_scenario(2000);
    s.config.termination = TerminationMode::SourceThreshold;
    s.config.z_threshold = 4.0;
    const RunResult run = run_simulation(s.config, s.field, s.graph);
    REQUIRE(run.reason == StopReason::ThresholdMet);
    const auto results = run_checks(s, run.log);
    CHECK(find_check(results, "termination").status == CheckStatus::Pass);
    CHECK(all_passed(results));

    SUBCASE("rows past the met threshold are flagged") {
        TrajectoryLog log = run.log;
        StepRecord extra = log.rows.back();
        extra.step += 1;
        extra.t += log.dt;
        log.rows.push_back(extra);
        const auto bad = run_checks(s, log);
        CHECK(find_check(bad, "termination").status == CheckStatus::Fail);
    }
}

TEST_CASE("status labels are stable") {
    CHECK(std::string(status_label(CheckStatus::Pass)) == "PASS");
    CHECK(std::string(status_label(CheckStatus::Fail)) == "FAIL");
    CHECK(std::string(status_label(CheckStatus::Skip)) == "SKIP");
}
