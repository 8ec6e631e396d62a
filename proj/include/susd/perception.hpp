#pragma once

#include <vector>

#include "susd/vec2.hpp"

namespace susd {

// Estimated body frame: q is the (unit) major-axis estimate, n = rotate90(q).
struct BodyFrame {
    Vec2 q{1.0, 0.0};
    Vec2 n{0.0, 1.0};
};

inline BodyFrame make_frame(Vec2 q) { return {q, rotate90(q)}; }

// Exact eigenstructure of a symmetric 2x2: unit eigenvectors q (major) and
// n = rotate90(q), with lambda_q >= lambda_n.
struct PrincipalAxes {
    Vec2 q;
    Vec2 n;
    double lambda_q = 0.0;
    double lambda_n = 0.0;
    double gap() const { return lambda_q - lambda_n; }
};

// Eigenvalue tie threshold below which the major axis is ambiguous.
inline constexpr double kDegenerateGap = 1e-12;

// Mean of the member positions.
Vec2 local_center(const std::vector<Vec2>& members);

// Unnormalized position scatter sum_k (r_k - mean)(r_k - mean)^T over the
// closed neighborhood. Throws DegenerateInputError for fewer than two members.
SymMat2 covariance(const std::vector<Vec2>& members);

// Integrates dq/dtau = (I - q q^T) C q by explicit Euler with renormalization
// after every substep, for the given duration. substep must lie in
// (0, duration]; the count is rounded so substeps are uniform. Throws
// std::invalid_argument for a near-zero q_init or nonpositive durations.
Vec2 oja_flow(const SymMat2& c, Vec2 q_init, double duration, double substep);

// Same integration, also recording the normalized estimate after every
// substep (trace gets one entry per substep, final state last).
Vec2 oja_flow_trace(const SymMat2& c, Vec2 q_init, double duration, double substep,
                    std::vector<Vec2>* trace);

// Closed-form eigendecomposition. The sign of q is chosen so
// <q, reference_q> >= 0; if the eigenvalues tie within kDegenerateGap the
// major axis is taken to be reference_q itself.
PrincipalAxes exact_principal_axes(const SymMat2& c, Vec2 reference_q);

}  // namespace susd
