#pragma once

#include <vector>

#include "susd/vec2.hpp"

namespace susd {

// One term a * exp(-(r-c)^T P (r-c)) of a composite field; P must be symmetric PSD.
struct GaussianWell {
    double amplitude = 0.0;
    Vec2 center;
    SymMat2 shape;
};

enum class FieldKind { Quadratic, NonconvexBenchmark, Composite };

// Twice-differentiable scalar signal measured by the agents. Three variants:
//  - Quadratic: z(r) = <r - source, r - source>
//  - NonconvexBenchmark: fixed two-well/cone benchmark (see field.cpp for constants)
//  - Composite: bias + <linear, r> + quad_weight * ||r - quad_center||^2
//               + sum of Gaussian wells + cone_weight * ||r||
// The cone term is not differentiable at the origin; gradient() returns the zero
// vector there and hessian() drops the cone contribution at that single point.
class ScalarField {
  public:
    static ScalarField quadratic(Vec2 source);
    static ScalarField nonconvex_benchmark();
    static ScalarField composite(double bias, Vec2 linear, double quad_weight, Vec2 quad_center,
                                 std::vector<GaussianWell> wells, double cone_weight);

    double value(Vec2 r) const;
    Vec2 gradient(Vec2 r) const;
    SymMat2 hessian(Vec2 r) const;

    FieldKind kind() const { return kind_; }
    Vec2 source() const { return quad_center_; }

    double bias() const { return bias_; }
    Vec2 linear() const { return linear_; }
    double quad_weight() const { return quad_weight_; }
    Vec2 quad_center() const { return quad_center_; }
    const std::vector<GaussianWell>& wells() const { return wells_; }
    double cone_weight() const { return cone_weight_; }

  private:
    ScalarField() = default;

    FieldKind kind_ = FieldKind::Quadratic;
    double bias_ = 0.0;
    Vec2 linear_;
    double quad_weight_ = 0.0;
    Vec2 quad_center_;
    std::vector<GaussianWell> wells_;
    double cone_weight_ = 0.0;
};

// Central-difference oracles used by tests and diagnostics.
Vec2 fd_gradient(const ScalarField& field, Vec2 r, double h = 1e-6);
SymMat2 fd_hessian(const ScalarField& field, Vec2 r, double h = 1e-4);

// max |eigenvalue| of the Hessian at r.
double hessian_spectral_norm(const ScalarField& field, Vec2 r);

}  // namespace susd
