#pragma once

#include <string>

#include "susd/engine.hpp"
#include "susd/field.hpp"
#include "susd/graph.hpp"
#include "susd/theory.hpp"

namespace susd {

// A fully-resolved run description: everything needed to reproduce a
// simulation plus the knobs for post-run diagnostics and bound evaluation.
//
// On disk this is a JSON document with a versioned schema:
//
//   {
//     "schema_version": 1,
//     "name": "complete4_quadratic",
//     "field": {"kind": "quadratic", "source": [0, 0]}
//              | {"kind": "nonconvex_benchmark"}
//              | {"kind": "composite", "bias": ..., "linear": [gx, gy],
//                 "quad_weight": ..., "quad_center": [..], "cone_weight": ...,
//                 "wells": [{"amplitude": a, "center": [..],
//                            "shape": [c11, c12, c22]}, ...]},
//     "graph": {"kind": "complete"}
//              | {"kind": "static", "edges": [[i, j], ...]}
//              | {"kind": "dynamic_k_nearest", "k": 3},
//     "gains": {"k1": 1, "k2": 0, "kf": 0, "kfn": 0, "z_desired": 0,
//               "spacing": 0},
//     "sim": {"dt": 0.01, "epsilon": 0.01, "oja_substep": 0.01,
//             "max_steps": 1000,
//             "termination": "fixed_horizon" | "source_threshold",
//             "z_threshold": 0.0, "seed": 1,
//             "formation_along_n": false,
//             "clamp_speed": false, "max_speed": 0.0},
//     "agents": {"count": 4,
//                "initial_positions": [[x, y], ...]
//                | "initial_box": {"low": [..], "high": [..]},
//                "initial_qhat": [qx, qy],          // optional, shared
//                "initial_qhat_reference": [1, 0]}, // optional
//     "diagnostics": {"enabled": true,
//                     "bound_params": {"d": 0.5, "eps1": 0.5, "eps2": 0.5,
//                                      "ell": 2.0, "eps3": null,
//                                      "eps4": null,
//                                      "window_fraction": 0.5}}
//   }
//
// Unknown keys are rejected so typos fail loudly. "kfn" defaults to "kf"
// when omitted; other gains default to zero except k1 (defaults to 1).
struct Scenario {
    std::string name;
    ScalarField field = ScalarField::quadratic({0.0, 0.0});
    VisibilityGraph graph = VisibilityGraph::complete(2);
    SimConfig config;
    bool diagnostics_enabled = true;
    BoundInputs bound_inputs;
};

// Parses and validates scenario JSON text; throws ParseError on syntax or
// schema violations (unknown keys, wrong types, missing required fields,
// out-of-range values).
Scenario parse_scenario(const std::string& json_text);

Scenario load_scenario(const std::string& path);

// Serializes back to schema-version-1 JSON (stable key order, round-trips
// through parse_scenario). Used to drop resolved_scenario.json next to logs.
std::string scenario_to_json(const Scenario& scenario);

}  // namespace susd
