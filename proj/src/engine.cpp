#include "susd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "susd/errors.hpp"

namespace susd {

namespace {

// Canonical uniform double in [low, high) from the top 53 bits of the
// generator, identical across platforms for a given seed.
double uniform_in(std::mt19937_64& rng, double low, double high) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return low + (high - low) * unit;
}

// Positions of the closed neighborhood {i} + neighbors(i) in ascending id
// order, so every agent on a complete graph sums in the same order.
std::vector<Vec2> closed_neighborhood_positions(int i, const std::vector<Vec2>& positions,
                                                const VisibilityGraph& graph) {
    std::vector<int> ids = graph.neighbors(i, positions);
    ids.insert(std::lower_bound(ids.begin(), ids.end(), i), i);
    std::vector<Vec2> members;
    members.reserve(ids.size());
    for (int id : ids) members.push_back(positions[static_cast<std::size_t>(id)]);
    return members;
}

std::vector<Vec2> current_positions(const std::vector<AgentState>& states) {
    std::vector<Vec2> positions;
    positions.reserve(states.size());
    for (const auto& s : states) positions.push_back(s.r);
    return positions;
}

void measure(std::vector<AgentState>& states, const ScalarField& field) {
    for (auto& s : states) s.z = field.value(s.r);
}

void update_frames(std::vector<AgentState>& states, const VisibilityGraph& graph,
                   const SimConfig& config, long step_index) {
    const std::vector<Vec2> snapshot = current_positions(states);
    const double duration = config.dt / config.epsilon;
    for (int i = 0; i < config.agent_count; ++i) {
        auto& agent = states[static_cast<std::size_t>(i)];
        const SymMat2 c = covariance(closed_neighborhood_positions(i, snapshot, graph));
        Vec2 q;
        try {
            q = oja_flow(c, agent.frame.q, duration, config.oja_substep);
        } catch (const NumericalError&) {
            throw NumericalError("perception flow diverged for agent " + std::to_string(i),
                                 static_cast<std::size_t>(step_index));
        }
        if (dot(q, agent.frame.q) < 0.0) q = -q;
        agent.frame = make_frame(q);
    }
}

void advance(std::vector<AgentState>& states, const VisibilityGraph& graph,
             const SimConfig& config, long step_index) {
    const std::vector<Vec2> snapshot = current_positions(states);
    std::vector<Vec2> velocities(states.size());
    for (int i = 0; i < config.agent_count; ++i) {
        const auto& agent = states[static_cast<std::size_t>(i)];
        Vec2 u = susd_control(agent.z, config.gains, agent.frame);
        if (config.gains.kf != 0.0 || (config.formation_along_n && config.gains.kfn != 0.0)) {
            std::vector<Vec2> neighbor_positions;
            for (int j : graph.neighbors(i, snapshot))
                neighbor_positions.push_back(snapshot[static_cast<std::size_t>(j)]);
            u += formation_term(agent.r, neighbor_positions, agent.frame, config.gains.kf,
                                config.gains.spacing);
            if (config.formation_along_n)
                u += formation_term_n(agent.r, neighbor_positions, agent.frame, config.gains.kfn,
                                      config.gains.spacing);
        }
        if (config.clamp_speed_enabled) u = clamp_speed(u, config.max_speed);
        velocities[static_cast<std::size_t>(i)] = u;
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        states[i].r += config.dt * velocities[i];
        if (!is_finite(states[i].r))
            throw NumericalError("agent " + std::to_string(i) + " position went non-finite",
                                 static_cast<std::size_t>(step_index));
    }
}

StepRecord snapshot_row(const std::vector<AgentState>& states, long step, double dt) {
    StepRecord row;
    row.step = step;
    row.t = static_cast<double>(step) * dt;
    row.positions.reserve(states.size());
    row.z.reserve(states.size());
    row.frames.reserve(states.size());
    for (const auto& s : states) {
        row.positions.push_back(s.r);
        row.z.push_back(s.z);
        row.frames.push_back(s.frame);
    }
    return row;
}

}  // namespace

std::vector<Vec2> resolve_initial_positions(const SimConfig& config) {
    if (!config.initial_positions.empty()) {
        if (static_cast<int>(config.initial_positions.size()) != config.agent_count)
            throw ConfigError("initial position count does not match agent count");
        return config.initial_positions;
    }
    if (!config.initial_box)
        throw ConfigError("no initial positions: give an explicit list or a box");
    const BoxInit& box = *config.initial_box;
    if (!(box.low.x <= box.high.x) || !(box.low.y <= box.high.y))
        throw ConfigError("initial box has inverted bounds");
    std::mt19937_64 rng(config.seed);
    std::vector<Vec2> positions;
    positions.reserve(static_cast<std::size_t>(config.agent_count));
    for (int i = 0; i < config.agent_count; ++i) {
        const double x = uniform_in(rng, box.low.x, box.high.x);
        const double y = uniform_in(rng, box.low.y, box.high.y);
        positions.push_back({x, y});
    }
    return positions;
}

std::vector<AgentState> initialize_agents(const SimConfig& config, const ScalarField& field,
                                          const VisibilityGraph& graph) {
    if (config.agent_count < 2) throw ConfigError("simulation needs at least two agents");
    if (graph.agent_count() != config.agent_count)
        throw ConfigError("graph agent count does not match configuration");
    if (!(config.dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(config.epsilon > 0.0) || !(config.epsilon < 1.0))
        throw ConfigError("epsilon must lie in (0, 1)");
    const double duration = config.dt / config.epsilon;
    if (!(config.oja_substep > 0.0) || config.oja_substep > duration)
        throw ConfigError("oja_substep must lie in (0, dt/epsilon]");
    if (config.max_steps < 0) throw ConfigError("max_steps must be nonnegative");
    if (config.termination == TerminationMode::SourceThreshold && !std::isfinite(config.z_threshold))
        throw ConfigError("source threshold termination needs a finite z_threshold");
    if (config.clamp_speed_enabled && !(config.max_speed > 0.0))
        throw ConfigError("speed clamp enabled but max_speed is not positive");
    if (!(config.gains.k1 > 0.0)) throw ConfigError("k1 must be positive");
    if (config.gains.k2 < 0.0 || config.gains.kf < 0.0 || config.gains.kfn < 0.0)
        throw ConfigError("k2, kf and kfn must be nonnegative");

    const std::vector<Vec2> positions = resolve_initial_positions(config);
    for (int i = 0; i < config.agent_count; ++i) {
        if (graph.neighbors(i, positions).empty()) {
            std::string msg = "agent " + std::to_string(i) + " has no neighbors";
            if (config.gains.kf > 0.0 || (config.formation_along_n && config.gains.kfn > 0.0))
                msg += "; formation term undefined for an isolated agent";
            throw ConfigError(msg);
        }
    }

    std::vector<AgentState> states(static_cast<std::size_t>(config.agent_count));
    for (int i = 0; i < config.agent_count; ++i)
        states[static_cast<std::size_t>(i)].r = positions[static_cast<std::size_t>(i)];

    if (config.initial_qhat) {
        const double len = norm(*config.initial_qhat);
        if (len < 1e-12) throw ConfigError("initial_qhat must be nonzero");
        const Vec2 q = *config.initial_qhat / len;
        for (auto& s : states) s.frame = make_frame(q);
    } else {
        for (int i = 0; i < config.agent_count; ++i) {
            const SymMat2 c = covariance(closed_neighborhood_positions(i, positions, graph));
            const PrincipalAxes axes = exact_principal_axes(c, config.initial_qhat_reference);
            states[static_cast<std::size_t>(i)].frame = make_frame(axes.q);
        }
    }
    measure(states, field);
    return states;
}

void step_once(const ScalarField& field, const VisibilityGraph& graph, const SimConfig& config,
               std::vector<AgentState>& states, long step_index) {
    measure(states, field);
    update_frames(states, graph, config, step_index);
    advance(states, graph, config, step_index);
}

RunResult run_simulation(const SimConfig& config, const ScalarField& field,
                         const VisibilityGraph& graph) {
    std::vector<AgentState> states = initialize_agents(config, field, graph);

    RunResult result;
    result.log.dt = config.dt;

    long s = 0;
    for (;; ++s) {
        measure(states, field);
        if (config.termination == TerminationMode::SourceThreshold) {
            bool all_below = true;
            for (const auto& agent : states)
                if (!(agent.z < config.z_threshold)) { all_below = false; break; }
            if (all_below) {
                result.reason = StopReason::ThresholdMet;
                break;
            }
        }
        if (s >= config.max_steps) {
            result.reason = StopReason::HorizonReached;
            break;
        }
        update_frames(states, graph, config, s);
        result.log.rows.push_back(snapshot_row(states, s, config.dt));
        advance(states, graph, config, s);
    }

    result.steps_executed = s;
    result.log.rows.push_back(snapshot_row(states, s, config.dt));
    return result;
}

}  // namespace susd
