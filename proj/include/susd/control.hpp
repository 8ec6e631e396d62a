#pragma once

#include <vector>

#include "susd/perception.hpp"
#include "susd/vec2.hpp"

namespace susd {

// Control gains. k1 scales the measurement-driven speed along n, k2 the
// constant drift along q (level-curve tracking), kf/kfn the formation terms
// along q and n, z_desired the tracked level, spacing the desired projected
// inter-agent distance d_ij (one global scalar).
struct Gains {
    double k1 = 1.0;
    double k2 = 0.0;
    double kf = 0.0;
    double kfn = 0.0;
    double z_desired = 0.0;
    double spacing = 0.0;
};

// u = k1 (z - z_desired) n + k2 q.
Vec2 susd_control(double z, const Gains& gains, const BodyFrame& frame);

// kf * sum_j (<r_j - r_i, q> - spacing) <r_j - r_i, q> q over the neighbors.
Vec2 formation_term(Vec2 r_i, const std::vector<Vec2>& neighbor_positions, const BodyFrame& frame,
                    double kf, double spacing);

// Same regulation along n instead of q.
Vec2 formation_term_n(Vec2 r_i, const std::vector<Vec2>& neighbor_positions, const BodyFrame& frame,
                      double kfn, double spacing);

// Scales u down to max_speed when ||u|| exceeds it.
Vec2 clamp_speed(Vec2 u, double max_speed);

}  // namespace susd
