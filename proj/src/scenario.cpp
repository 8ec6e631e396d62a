#include "susd/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "susd/errors.hpp"

namespace susd {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) { throw ParseError("scenario: " + what); }

const json& member(const json& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(ctx + ": missing required key \"" + key + "\"");
    return *it;
}

void expect_keys(const json& obj, const std::set<std::string>& allowed, const std::string& ctx) {
    if (!obj.is_object()) fail(ctx + ": expected an object");
    for (const auto& item : obj.items()) {
        if (allowed.count(item.key()) == 0)
            fail(ctx + ": unknown key \"" + item.key() + "\"");
    }
}

double as_double(const json& v, const std::string& ctx) {
    if (!v.is_number()) fail(ctx + ": expected a number");
    return v.get<double>();
}

double get_double(const json& obj, const char* key, const std::string& ctx) {
    return as_double(member(obj, key, ctx), ctx + "." + key);
}

double get_double_or(const json& obj, const char* key, double fallback, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return fallback;
    return as_double(*it, ctx + "." + key);
}

long get_long(const json& obj, const char* key, const std::string& ctx) {
    const json& v = member(obj, key, ctx);
    if (!v.is_number_integer()) fail(ctx + "." + key + ": expected an integer");
    return v.get<long>();
}

long get_long_or(const json& obj, const char* key, long fallback, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return fallback;
    if (!it->is_number_integer()) fail(ctx + "." + key + ": expected an integer");
    return it->get<long>();
}

bool get_bool_or(const json& obj, const char* key, bool fallback, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return fallback;
    if (!it->is_boolean()) fail(ctx + "." + key + ": expected a boolean");
    return it->get<bool>();
}

std::string get_string(const json& obj, const char* key, const std::string& ctx) {
    const json& v = member(obj, key, ctx);
    if (!v.is_string()) fail(ctx + "." + key + ": expected a string");
    return v.get<std::string>();
}

Vec2 as_vec2(const json& v, const std::string& ctx) {
    if (!v.is_array() || v.size() != 2) fail(ctx + ": expected [x, y]");
    return {as_double(v[0], ctx + "[0]"), as_double(v[1], ctx + "[1]")};
}

ScalarField parse_field(const json& obj) {
    const std::string ctx = "field";
    const std::string kind = get_string(obj, "kind", ctx);
    if (kind == "quadratic") {
        expect_keys(obj, {"kind", "source"}, ctx);
        return ScalarField::quadratic(as_vec2(member(obj, "source", ctx), ctx + ".source"));
    }
    if (kind == "nonconvex_benchmark") {
        expect_keys(obj, {"kind"}, ctx);
        return ScalarField::nonconvex_benchmark();
    }
    if (kind == "composite") {
        expect_keys(obj, {"kind", "bias", "linear", "quad_weight", "quad_center", "wells",
                          "cone_weight"},
                    ctx);
        std::vector<GaussianWell> wells;
        auto it = obj.find("wells");
        if (it != obj.end() && !it->is_null()) {
            if (!it->is_array()) fail(ctx + ".wells: expected an array");
            for (std::size_t w = 0; w < it->size(); ++w) {
                const std::string wctx = ctx + ".wells[" + std::to_string(w) + "]";
                const json& wj = (*it)[w];
                expect_keys(wj, {"amplitude", "center", "shape"}, wctx);
                GaussianWell well;
                well.amplitude = get_double(wj, "amplitude", wctx);
                well.center = as_vec2(member(wj, "center", wctx), wctx + ".center");
                const json& sj = member(wj, "shape", wctx);
                if (!sj.is_array() || sj.size() != 3)
                    fail(wctx + ".shape: expected [c11, c12, c22]");
                well.shape = {as_double(sj[0], wctx + ".shape[0]"),
                              as_double(sj[1], wctx + ".shape[1]"),
                              as_double(sj[2], wctx + ".shape[2]")};
                wells.push_back(well);
            }
        }
        Vec2 linear;
        if (auto lit = obj.find("linear"); lit != obj.end() && !lit->is_null())
            linear = as_vec2(*lit, ctx + ".linear");
        Vec2 quad_center;
        if (auto qit = obj.find("quad_center"); qit != obj.end() && !qit->is_null())
            quad_center = as_vec2(*qit, ctx + ".quad_center");
        return ScalarField::composite(get_double_or(obj, "bias", 0.0, ctx), linear,
                                      get_double_or(obj, "quad_weight", 0.0, ctx), quad_center,
                                      std::move(wells), get_double_or(obj, "cone_weight", 0.0, ctx));
    }
    fail(ctx + ".kind: unknown kind \"" + kind + "\"");
}

VisibilityGraph parse_graph(const json& obj, int agent_count) {
    const std::string ctx = "graph";
    const std::string kind = get_string(obj, "kind", ctx);
    if (kind == "complete") {
        expect_keys(obj, {"kind"}, ctx);
        return VisibilityGraph::complete(agent_count);
    }
    if (kind == "static") {
        expect_keys(obj, {"kind", "edges"}, ctx);
        const json& ej = member(obj, "edges", ctx);
        if (!ej.is_array()) fail(ctx + ".edges: expected an array of [i, j] pairs");
        std::vector<std::pair<int, int>> edges;
        for (std::size_t e = 0; e < ej.size(); ++e) {
            const std::string ectx = ctx + ".edges[" + std::to_string(e) + "]";
            const json& pair = ej[e];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
                !pair[1].is_number_integer())
                fail(ectx + ": expected [i, j] with integer ids");
            edges.emplace_back(pair[0].get<int>(), pair[1].get<int>());
        }
        try {
            return VisibilityGraph::static_edges(agent_count, edges);
        } catch (const std::exception& ex) {
            fail(ctx + ": " + ex.what());
        }
    }
    if (kind == "dynamic_k_nearest") {
        expect_keys(obj, {"kind", "k"}, ctx);
        const long k = get_long(obj, "k", ctx);
        if (k < 1) fail(ctx + ".k: must be >= 1");
        try {
            return VisibilityGraph::dynamic_k_nearest(agent_count, static_cast<int>(k));
        } catch (const std::exception& ex) {
            fail(ctx + ": " + ex.what());
        }
    }
    fail(ctx + ".kind: unknown kind \"" + kind + "\"");
}

Gains parse_gains(const json& obj) {
    const std::string ctx = "gains";
    expect_keys(obj, {"k1", "k2", "kf", "kfn", "z_desired", "spacing"}, ctx);
    Gains g;
    g.k1 = get_double_or(obj, "k1", 1.0, ctx);
    g.k2 = get_double_or(obj, "k2", 0.0, ctx);
    g.kf = get_double_or(obj, "kf", 0.0, ctx);
    g.kfn = get_double_or(obj, "kfn", g.kf, ctx);
    g.z_desired = get_double_or(obj, "z_desired", 0.0, ctx);
    g.spacing = get_double_or(obj, "spacing", 0.0, ctx);
    return g;
}

void parse_sim(const json& obj, SimConfig& config) {
    const std::string ctx = "sim";
    expect_keys(obj,
                {"dt", "epsilon", "oja_substep", "max_steps", "termination", "z_threshold",
                 "seed", "formation_along_n", "clamp_speed", "max_speed"},
                ctx);
    config.dt = get_double_or(obj, "dt", 0.01, ctx);
    config.epsilon = get_double_or(obj, "epsilon", 0.01, ctx);
    config.oja_substep = get_double_or(obj, "oja_substep", 0.01, ctx);
    config.max_steps = get_long_or(obj, "max_steps", 1000, ctx);
    if (config.max_steps < 0) fail(ctx + ".max_steps: must be >= 0");
    const std::string term = [&] {
        auto it = obj.find("termination");
        if (it == obj.end() || it->is_null()) return std::string("fixed_horizon");
        if (!it->is_string()) fail(ctx + ".termination: expected a string");
        return it->get<std::string>();
    }();
    if (term == "fixed_horizon") {
        config.termination = TerminationMode::FixedHorizon;
    } else if (term == "source_threshold") {
        config.termination = TerminationMode::SourceThreshold;
    } else {
        fail(ctx + ".termination: unknown mode \"" + term + "\"");
    }
    config.z_threshold = get_double_or(obj, "z_threshold", 0.0, ctx);
    const long seed = get_long_or(obj, "seed", 1, ctx);
    if (seed < 0) fail(ctx + ".seed: must be >= 0");
    config.seed = static_cast<std::uint64_t>(seed);
    config.formation_along_n = get_bool_or(obj, "formation_along_n", false, ctx);
    config.clamp_speed_enabled = get_bool_or(obj, "clamp_speed", false, ctx);
    config.max_speed = get_double_or(obj, "max_speed", 0.0, ctx);
}

void parse_agents(const json& obj, SimConfig& config) {
    const std::string ctx = "agents";
    expect_keys(obj,
                {"count", "initial_positions", "initial_box", "initial_qhat",
                 "initial_qhat_reference"},
                ctx);
    const long count = get_long(obj, "count", ctx);
    if (count < 2) fail(ctx + ".count: needs at least 2 agents");
    config.agent_count = static_cast<int>(count);

    const bool has_positions =
        obj.contains("initial_positions") && !obj["initial_positions"].is_null();
    const bool has_box = obj.contains("initial_box") && !obj["initial_box"].is_null();
    if (has_positions == has_box)
        fail(ctx + ": provide exactly one of initial_positions and initial_box");
    if (has_positions) {
        const json& pj = obj["initial_positions"];
        if (!pj.is_array() || static_cast<long>(pj.size()) != count)
            fail(ctx + ".initial_positions: expected " + std::to_string(count) + " [x, y] pairs");
        for (std::size_t i = 0; i < pj.size(); ++i)
            config.initial_positions.push_back(
                as_vec2(pj[i], ctx + ".initial_positions[" + std::to_string(i) + "]"));
    } else {
        const json& bj = obj["initial_box"];
        expect_keys(bj, {"low", "high"}, ctx + ".initial_box");
        BoxInit box;
        box.low = as_vec2(member(bj, "low", ctx), ctx + ".initial_box.low");
        box.high = as_vec2(member(bj, "high", ctx), ctx + ".initial_box.high");
        if (!(box.low.x < box.high.x) || !(box.low.y < box.high.y))
            fail(ctx + ".initial_box: low must be componentwise below high");
        config.initial_box = box;
    }
    if (auto it = obj.find("initial_qhat"); it != obj.end() && !it->is_null())
        config.initial_qhat = as_vec2(*it, ctx + ".initial_qhat");
    if (auto it = obj.find("initial_qhat_reference"); it != obj.end() && !it->is_null())
        config.initial_qhat_reference = as_vec2(*it, ctx + ".initial_qhat_reference");
}

void parse_diagnostics(const json& obj, Scenario& scenario) {
    const std::string ctx = "diagnostics";
    expect_keys(obj, {"enabled", "bound_params"}, ctx);
    scenario.diagnostics_enabled = get_bool_or(obj, "enabled", true, ctx);
    auto it = obj.find("bound_params");
    if (it == obj.end() || it->is_null()) return;
    const std::string bctx = ctx + ".bound_params";
    expect_keys(*it, {"d", "eps1", "eps2", "ell", "eps3", "eps4", "window_fraction"}, bctx);
    BoundInputs& b = scenario.bound_inputs;
    b.d = get_double_or(*it, "d", b.d, bctx);
    b.eps1 = get_double_or(*it, "eps1", b.eps1, bctx);
    b.eps2 = get_double_or(*it, "eps2", b.eps2, bctx);
    b.ell = get_double_or(*it, "ell", b.ell, bctx);
    if (auto e3 = it->find("eps3"); e3 != it->end() && !e3->is_null())
        b.eps3 = as_double(*e3, bctx + ".eps3");
    if (auto e4 = it->find("eps4"); e4 != it->end() && !e4->is_null())
        b.eps4 = as_double(*e4, bctx + ".eps4");
    b.window_fraction = get_double_or(*it, "window_fraction", b.window_fraction, bctx);
    if (!(b.window_fraction >= 0.0) || !(b.window_fraction < 1.0))
        fail(bctx + ".window_fraction: must lie in [0, 1)");
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& ex) {
        fail(std::string("invalid JSON: ") + ex.what());
    }
    expect_keys(root, {"schema_version", "name", "field", "graph", "gains", "sim", "agents",
                       "diagnostics"},
                "scenario");
    const long version = get_long(root, "schema_version", "scenario");
    if (version != 1)
        fail("unsupported schema_version " + std::to_string(version) + " (expected 1)");

    Scenario scenario;
    scenario.name = get_string(root, "name", "scenario");
    if (scenario.name.empty()) fail("name: must be nonempty");
    scenario.field = parse_field(member(root, "field", "scenario"));
    if (auto it = root.find("gains"); it != root.end())
        scenario.config.gains = parse_gains(*it);
    if (auto it = root.find("sim"); it != root.end()) parse_sim(*it, scenario.config);
    parse_agents(member(root, "agents", "scenario"), scenario.config);
    scenario.graph = parse_graph(member(root, "graph", "scenario"), scenario.config.agent_count);
    if (auto it = root.find("diagnostics"); it != root.end()) parse_diagnostics(*it, scenario);
    return scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("scenario: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string scenario_to_json(const Scenario& scenario) {
    json root;
    root["schema_version"] = 1;
    root["name"] = scenario.name;

    json field;
    switch (scenario.field.kind()) {
        case FieldKind::Quadratic:
            field["kind"] = "quadratic";
            field["source"] = {scenario.field.source().x, scenario.field.source().y};
            break;
        case FieldKind::NonconvexBenchmark:
            field["kind"] = "nonconvex_benchmark";
            break;
        case FieldKind::Composite: {
            field["kind"] = "composite";
            field["bias"] = scenario.field.bias();
            field["linear"] = {scenario.field.linear().x, scenario.field.linear().y};
            field["quad_weight"] = scenario.field.quad_weight();
            field["quad_center"] = {scenario.field.quad_center().x,
                                    scenario.field.quad_center().y};
            json wells = json::array();
            for (const GaussianWell& w : scenario.field.wells()) {
                json wj;
                wj["amplitude"] = w.amplitude;
                wj["center"] = {w.center.x, w.center.y};
                wj["shape"] = {w.shape.c11, w.shape.c12, w.shape.c22};
                wells.push_back(wj);
            }
            field["wells"] = wells;
            field["cone_weight"] = scenario.field.cone_weight();
            break;
        }
    }
    root["field"] = field;

    json graph;
    switch (scenario.graph.kind()) {
        case GraphKind::Complete:
            graph["kind"] = "complete";
            break;
        case GraphKind::Static: {
            graph["kind"] = "static";
            json edges = json::array();
            const auto& adj = scenario.graph.adjacency();
            for (int i = 0; i < scenario.graph.agent_count(); ++i)
                for (int j : adj[static_cast<std::size_t>(i)])
                    if (i < j) edges.push_back({i, j});
            graph["edges"] = edges;
            break;
        }
        case GraphKind::DynamicKNearest:
            graph["kind"] = "dynamic_k_nearest";
            graph["k"] = scenario.graph.k();
            break;
    }
    root["graph"] = graph;

    const Gains& g = scenario.config.gains;
    root["gains"] = {{"k1", g.k1},       {"k2", g.k2},
                     {"kf", g.kf},       {"kfn", g.kfn},
                     {"z_desired", g.z_desired}, {"spacing", g.spacing}};

    const SimConfig& c = scenario.config;
    json sim;
    sim["dt"] = c.dt;
    sim["epsilon"] = c.epsilon;
    sim["oja_substep"] = c.oja_substep;
    sim["max_steps"] = c.max_steps;
    sim["termination"] = c.termination == TerminationMode::FixedHorizon ? "fixed_horizon"
                                                                        : "source_threshold";
    sim["z_threshold"] = c.z_threshold;
    sim["seed"] = c.seed;
    sim["formation_along_n"] = c.formation_along_n;
    sim["clamp_speed"] = c.clamp_speed_enabled;
    sim["max_speed"] = c.max_speed;
    root["sim"] = sim;

    json agents;
    agents["count"] = c.agent_count;
    if (!c.initial_positions.empty()) {
        json positions = json::array();
        for (const Vec2& r : c.initial_positions) positions.push_back({r.x, r.y});
        agents["initial_positions"] = positions;
    } else if (c.initial_box) {
        agents["initial_box"] = {{"low", {c.initial_box->low.x, c.initial_box->low.y}},
                                 {"high", {c.initial_box->high.x, c.initial_box->high.y}}};
    }
    if (c.initial_qhat)
        agents["initial_qhat"] = {c.initial_qhat->x, c.initial_qhat->y};
    agents["initial_qhat_reference"] = {c.initial_qhat_reference.x, c.initial_qhat_reference.y};
    root["agents"] = agents;

    const BoundInputs& b = scenario.bound_inputs;
    json bounds;
    bounds["d"] = b.d;
    bounds["eps1"] = b.eps1;
    bounds["eps2"] = b.eps2;
    bounds["ell"] = b.ell;
    bounds["eps3"] = b.eps3 ? json(*b.eps3) : json(nullptr);
    bounds["eps4"] = b.eps4 ? json(*b.eps4) : json(nullptr);
    bounds["window_fraction"] = b.window_fraction;
    root["diagnostics"] = {{"enabled", scenario.diagnostics_enabled},
                           {"bound_params", bounds}};

    return root.dump(2) + "\n";
}

}  // namespace susd
