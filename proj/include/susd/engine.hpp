#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "susd/control.hpp"
#include "susd/field.hpp"
#include "susd/graph.hpp"
#include "susd/perception.hpp"

namespace susd {

struct AgentState {
    Vec2 r;
    BodyFrame frame;
    double z = 0.0;
};

enum class TerminationMode { FixedHorizon, SourceThreshold };
enum class StopReason { HorizonReached, ThresholdMet };

struct BoxInit {
    Vec2 low;
    Vec2 high;
};

// Full run configuration. epsilon is the fast/slow time-scale ratio: each
// control step of length dt integrates the perception flow for dt/epsilon
// of fast time, warm-started from the previous estimate.
struct SimConfig {
    Gains gains;
    double dt = 0.01;
    double epsilon = 0.01;
    double oja_substep = 0.01;
    long max_steps = 1000;
    TerminationMode termination = TerminationMode::FixedHorizon;
    double z_threshold = 0.0;
    std::uint64_t seed = 1;
    int agent_count = 0;
    std::vector<Vec2> initial_positions;        // explicit; empty means box init
    std::optional<BoxInit> initial_box;
    std::optional<Vec2> initial_qhat;           // shared explicit initial estimate
    Vec2 initial_qhat_reference{1.0, 0.0};      // sign reference for covariance init
    bool formation_along_n = false;
    bool clamp_speed_enabled = false;
    double max_speed = 0.0;
};

// One logged snapshot: everything indexed by agent id.
struct StepRecord {
    long step = 0;
    double t = 0.0;
    std::vector<Vec2> positions;
    std::vector<double> z;
    std::vector<BodyFrame> frames;
};

struct TrajectoryLog {
    double dt = 0.0;
    std::vector<StepRecord> rows;
};

struct RunResult {
    TrajectoryLog log;
    StopReason reason = StopReason::HorizonReached;
    long steps_executed = 0;
};

// Resolves explicit or seeded-box initial positions.
std::vector<Vec2> resolve_initial_positions(const SimConfig& config);

// Validates the configuration against the graph and builds the initial agent
// states (explicit shared q_hat, or the exact major axis of each agent's
// initial covariance). Throws ConfigError on invalid setups, including any
// agent without neighbors.
std::vector<AgentState> initialize_agents(const SimConfig& config, const ScalarField& field,
                                          const VisibilityGraph& graph);

// One control step, Jacobi style: every agent reads the same position
// snapshot, measures z, re-integrates its perception flow warm-started from
// its previous estimate, then all positions advance together by dt. Throws
// NumericalError if any state goes non-finite.
void step_once(const ScalarField& field, const VisibilityGraph& graph, const SimConfig& config,
               std::vector<AgentState>& states, long step_index);

// Runs until the termination criterion is met and returns the trajectory log.
// The log holds one row per executed step (state and the frame that produced
// that step's motion) plus a final snapshot row; max_steps = 0 logs only the
// initial state.
RunResult run_simulation(const SimConfig& config, const ScalarField& field,
                         const VisibilityGraph& graph);

}  // namespace susd
