#include "susd/control.hpp"

namespace susd {

Vec2 susd_control(double z, const Gains& gains, const BodyFrame& frame) {
    return gains.k1 * (z - gains.z_desired) * frame.n + gains.k2 * frame.q;
}

namespace {

Vec2 projected_spacing_term(Vec2 r_i, const std::vector<Vec2>& neighbor_positions, Vec2 axis,
                            double gain, double spacing) {
    double scale = 0.0;
    for (const Vec2& r_j : neighbor_positions) {
        const double p = dot(r_j - r_i, axis);
        scale += (p - spacing) * p;
    }
    return gain * scale * axis;
}

}  // namespace

Vec2 formation_term(Vec2 r_i, const std::vector<Vec2>& neighbor_positions, const BodyFrame& frame,
                    double kf, double spacing) {
    return projected_spacing_term(r_i, neighbor_positions, frame.q, kf, spacing);
}

Vec2 formation_term_n(Vec2 r_i, const std::vector<Vec2>& neighbor_positions, const BodyFrame& frame,
                      double kfn, double spacing) {
    return projected_spacing_term(r_i, neighbor_positions, frame.n, kfn, spacing);
}

Vec2 clamp_speed(Vec2 u, double max_speed) {
    const double speed = norm(u);
    if (max_speed > 0.0 && speed > max_speed) return (max_speed / speed) * u;
    return u;
}

}  // namespace susd
