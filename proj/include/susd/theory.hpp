#pragma once

#include <optional>
#include <vector>

#include "susd/control.hpp"
#include "susd/engine.hpp"
#include "susd/field.hpp"
#include "susd/graph.hpp"
#include "susd/perception.hpp"
#include "susd/vec2.hpp"

namespace susd {

// Eigengap below which frame-rate predictions are refused.
inline constexpr double kPredictorGapTol = 1e-9;

// Time derivative of the true principal axes.
struct FrameRate {
    Vec2 dn;
    Vec2 dq;
};

// Frame-misalignment diagnostic 1 + <grad/||grad||, n>; empty when the
// gradient underflows (never fabricated).
std::optional<double> theta(Vec2 n, Vec2 grad);

// Estimate mismatch 1 - <q_exact, q_hat>.
double psi(Vec2 q_exact, Vec2 q_hat);

// nu_k = z(r_k) - z(r_center) - <r_k - r_center, grad z(r_center)>.
double taylor_residual(const ScalarField& field, Vec2 r_k, Vec2 r_center);

// Exact axes of every agent's local covariance; reference_q fixes signs.
std::vector<PrincipalAxes> exact_axes_all(const std::vector<Vec2>& positions,
                                          const VisibilityGraph& graph,
                                          const std::vector<Vec2>& reference_q);

// Axis rates for arbitrary member velocities: dn = -kappa q, dq = kappa n with
// kappa = <q, dC/dt n> / (lambda_q - lambda_n) and
// dC/dt = sum_k [u_k (r_k - r_c)^T + (r_k - r_c) u_k^T].
// Throws DegenerateInputError when the eigengap is below kPredictorGapTol.
FrameRate predict_frame_rate_general(int i, const std::vector<Vec2>& positions,
                                     const std::vector<Vec2>& velocities,
                                     const VisibilityGraph& graph, Vec2 reference_q);

// Axis rates with the control law substituted: dn = -(k1 <w_i, q_i> + sigma_i) q_i / gap,
// dq the matching n_i component, where
//   w_i     = sum_k ((z_k - z_desired) <n_k, n_i> - (z_{c,i} - z_desired)) (r_k - r_{c,i})
//   sigma_i = k1 sum_k ((z_k - z_desired) <n_k, q_i> - z_{c,i}) <r_k - r_{c,i}, n_i>
//           + k2 sum_k (<q_k, n_i> <r_k - r_{c,i}, q_i> + <q_k, q_i> <r_k - r_{c,i}, n_i>)
// with z_{c,i} = z(r_{c,i}) and all frames the true axes in axes_all.
FrameRate predict_frame_rate_susd(int i, const std::vector<Vec2>& positions,
                                  const ScalarField& field, const VisibilityGraph& graph,
                                  const Gains& gains, const std::vector<PrincipalAxes>& axes_all);

// Complete-graph reduction around the swarm centroid, plus the equivalent
// projector form and the Taylor-residual feedthrough nu_hat.
struct CompleteFrameRate {
    FrameRate rate;
    Vec2 dn_projector;  // -k1 (lq/gap) ||grad|| (I - n n^T) N - nu_hat q
    double nu_hat = 0.0;
};
CompleteFrameRate predict_frame_rate_complete(const std::vector<Vec2>& positions,
                                              const ScalarField& field, const Gains& gains,
                                              Vec2 reference_q);

// sum_k nu_k <r_k - r_{c,i}, q_i> over the closed neighborhood.
double vartheta_sum(int i, const std::vector<Vec2>& positions, const ScalarField& field,
                    const VisibilityGraph& graph, Vec2 q_i);

/// Frame-disagreement feedthrough of the local reduction:
// (k1/gap_i) sum_k z_k (<n_k, q_i> <r_k - r_{c,i}, n_i> + (<n_k, n_i> - 1) <r_k - r_{c,i}, q_i>).
double interaction_term(int i, const std::vector<Vec2>& positions, const ScalarField& field,
                        const VisibilityGraph& graph, const Gains& gains,
                        const std::vector<PrincipalAxes>& axes_all);

// ---------------------------------------------------------------------------
// Per-step diagnostics attached to trajectory logs.

struct DiagnosticsRow {
    std::optional<double> theta;
    double psi = 0.0;
    double lambda_q = 0.0;
    double lambda_n = 0.0;
    double z_c = 0.0;    // field value at the local center
    double z_c_d = 0.0;  // z_c - z_desired
    double nu_max = 0.0; // max |nu_k| over the closed neighborhood
    std::optional<double> predictor_residual;  // axis-rate formula vs central FD, relative
};

// diagnostics[row][agent], aligned with log.rows.
std::vector<std::vector<DiagnosticsRow>> compute_diagnostics(const TrajectoryLog& log,
                                                             const ScalarField& field,
                                                             const VisibilityGraph& graph,
                                                             const Gains& gains);

// ---------------------------------------------------------------------------
// Slow/fast decomposition residuals.

struct ResidualReport {
    double max_theta_residual = 0.0;   // relative, across steps and agents
    double max_psi_deviation = 0.0;    // re-integrated flow vs exact boundary-layer solution
    double max_eta = 0.0;              // largest interconnection magnitude seen
    long theta_samples = 0;
    long psi_samples = 0;
    bool theta_applicable = false;     // incomplete graphs are covered only for
                                       // pure source seeking (k2 = 0, z_desired = 0)
};

ResidualReport slow_fast_residuals(const TrajectoryLog& log, const ScalarField& field,
                                   const VisibilityGraph& graph, const Gains& gains,
                                   double epsilon, double oja_substep);

// ---------------------------------------------------------------------------
// Lyapunov scalars.

struct LyapunovRow {
    std::optional<double> v1;  // theta/(2 - theta), complete graphs
    std::optional<double> v2;  // psi/(1 - psi), complete graphs
    double v3 = 0.0;           // sum_i theta_i/(2 - theta_i)
    double v4 = 0.0;           // sum_i psi_i/(1 - psi_i)
    std::optional<double> v5;  // 0.5 (z_c - z_desired)^2, complete graphs
    double v6 = 0.0;           // 0.5 sum_i (z_{c,i} - z_desired)^2
    bool theta_domain_ok = true;  // every theta < 2
    bool psi_domain_ok = true;    // every psi < 1
};

std::vector<LyapunovRow> lyapunov_scalars(const TrajectoryLog& log, const ScalarField& field,
                                          const VisibilityGraph& graph, const Gains& gains);

// ---------------------------------------------------------------------------
// Stability-bound calculators. mu1/mu2 here are the gradient-norm floor and
// ceiling of the coupled-stability statements; mu1_bound and mu2_bound are the
// sufficient floors computed from run quantities.

// (|vartheta| + sqrt(vartheta^2 + 4 eps1 lq gap (|z_a - z_desired| + k2/k1) hess_norm))
//   / (2 eps1 lq),  eps1 in (0, 1].
double mu1_bound(double vartheta, double eps1, double lambda_q, double lambda_n, double z_a,
                 double z_desired, double k1, double k2, double hess_norm);

struct Mu2Item {
    double vartheta_plus_e = 0.0;
    double z_a = 0.0;
    double lambda_q = 0.0;
    double lambda_n = 0.0;
    double hess_norm = 0.0;
};
double mu2_item_bound(const Mu2Item& item, double eps2);
double mu2_bound(const std::vector<Mu2Item>& items, double eps2);  // min over agents

// 2 (1-d) mu1 chi1^3 / (d k1 mu2^2 chi2^2), d in (0, 1).
double epsilon_d(double d, double mu1, double mu2, double chi1, double chi2, double k1);

// 2 (1-d) mu2 chi1^3 / (d k1 mu2bar^2 ell^3 chi2^2), ell >= 1.
double epsilon_star(double d, double mu2, double mu2bar, double chi1, double chi2, double k1,
                    double ell);

// (k1 nu_bar + k2 sqrt(1 - eps3^2)) / (k1 eps3^2), eps3 in (0, 1].
double ultimate_bound_strip(double k1, double k2, double nu_bar, double eps3);

// (nu_bar + e_bar) sqrt(M) / eps4.
double ultimate_bound_incomplete(double nu_bar, double e_bar, int agent_count, double eps4);

// ---------------------------------------------------------------------------
// Whole-run bound evaluation over the tail window of a log.

struct BoundInputs {
    double d = 0.5;
    double eps1 = 0.5;
    double eps2 = 0.5;
    double ell = 2.0;
    std::optional<double> eps3;  // measured as min(-<N_c, n_hat>) when unset
    std::optional<double> eps4;  // measured per agent when unset
    double window_fraction = 0.5;  // evaluate over the last (1 - fraction) of the run
};

struct BoundsReport {
    long window_begin = 0;
    double mu1_formula_max = 0.0;
    double mu2_formula_min = 0.0;
    double grad_floor = 0.0;
    double grad_ceil = 0.0;
    double grad_floor_local = 0.0;
    double grad_ceil_local = 0.0;
    double gap_floor = 0.0;
    double gap_ceil = 0.0;
    double gap_floor_local = 0.0;
    double gap_ceil_local = 0.0;
    double epsilon_d_value = 0.0;
    double epsilon_star_value = 0.0;
    bool epsilon_respects_d = false;
    bool epsilon_respects_star = false;
    double nu_bar = 0.0;        // empirical max |z_a - z_c| of the whole swarm
    double nu_bar_local = 0.0;  // empirical max |z_{a,i} - z_{c,i}| over agents
    double e_bar = 0.0;        // empirical max |<N_{c,i}, e_i>|
    double eps3_measured = 0.0;
    double eps4_measured = 0.0;
    double strip_bound = 0.0;
    double strip_bound_incomplete = 0.0;
    double max_abs_level_error = 0.0;   // max |z_c - z_desired| over the window
    double mean_abs_level_error = 0.0;
};

BoundsReport compute_bounds(const TrajectoryLog& log, const ScalarField& field,
                            const VisibilityGraph& graph, const Gains& gains, double epsilon,
                            const BoundInputs& inputs);

}  // namespace susd
