#include "susd/field.hpp"

#include <cmath>
#include <utility>

namespace susd {

namespace {

// Benchmark field constants: two anisotropic Gaussian wells of depth 1 at
// a = (1, 0) and b = (0, -2) plus a cone, on a bias of 2.
//   z(r) = 2 - exp(-(r-a)^T S1 (r-a)) - exp(-(r-b)^T A^T S2 A (r-b)) + ||r||
//   S1 = 0.9 diag(1/sqrt(30), 1),  S2 = 0.9 diag(1, 1/sqrt(15)),
//   A  = (sqrt(2)/2) [[1, -1], [1, 1]]  (45-degree rotation)
SymMat2 benchmark_well_a_shape() {
    return {0.9 / std::sqrt(30.0), 0.0, 0.9};
}

SymMat2 benchmark_well_b_shape() {
    // A^T S2 A expanded for the 45-degree A above.
    const double s1 = 0.9;
    const double s2 = 0.9 / std::sqrt(15.0);
    const double mean = 0.5 * (s1 + s2);
    const double off = 0.5 * (s1 - s2);
    // A rotates by +45 deg, so A^T diag(s1,s2) A has equal diagonal entries
    // and off-diagonal -(s1-s2)/2.
    return {mean, -off, mean};
}

}  // namespace

ScalarField ScalarField::quadratic(Vec2 source) {
    ScalarField f;
    f.kind_ = FieldKind::Quadratic;
    f.quad_weight_ = 1.0;
    f.quad_center_ = source;
    return f;
}

ScalarField ScalarField::nonconvex_benchmark() {
    ScalarField f;
    f.kind_ = FieldKind::NonconvexBenchmark;
    f.bias_ = 2.0;
    f.wells_ = {{-1.0, {1.0, 0.0}, benchmark_well_a_shape()},
                {-1.0, {0.0, -2.0}, benchmark_well_b_shape()}};
    f.cone_weight_ = 1.0;
    return f;
}

ScalarField ScalarField::composite(double bias, Vec2 linear, double quad_weight, Vec2 quad_center,
                                   std::vector<GaussianWell> wells, double cone_weight) {
    ScalarField f;
    f.kind_ = FieldKind::Composite;
    f.bias_ = bias;
    f.linear_ = linear;
    f.quad_weight_ = quad_weight;
    f.quad_center_ = quad_center;
    f.wells_ = std::move(wells);
    f.cone_weight_ = cone_weight;
    return f;
}

double ScalarField::value(Vec2 r) const {
    if (kind_ == FieldKind::Quadratic) {
        const Vec2 d = r - quad_center_;
        return dot(d, d);
    }
    double z = bias_ + dot(linear_, r);
    if (quad_weight_ != 0.0) {
        const Vec2 d = r - quad_center_;
        z += quad_weight_ * dot(d, d);
    }
    for (const auto& w : wells_) {
        const Vec2 d = r - w.center;
        z += w.amplitude * std::exp(-dot(d, mul(w.shape, d)));
    }
    if (cone_weight_ != 0.0) z += cone_weight_ * norm(r);
    return z;
}

Vec2 ScalarField::gradient(Vec2 r) const {
    if (kind_ == FieldKind::Quadratic) {
        return 2.0 * (r - quad_center_);
    }
    Vec2 g = linear_;
    if (quad_weight_ != 0.0) g += 2.0 * quad_weight_ * (r - quad_center_);
    for (const auto& w : wells_) {
        const Vec2 d = r - w.center;
        const double e = std::exp(-dot(d, mul(w.shape, d)));
        g += (-2.0 * w.amplitude * e) * mul(w.shape, d);
    }
    if (cone_weight_ != 0.0) {
        const double len = norm(r);
        if (len > 0.0) g += (cone_weight_ / len) * r;
    }
    return g;
}

SymMat2 ScalarField::hessian(Vec2 r) const {
    if (kind_ == FieldKind::Quadratic) {
        return {2.0, 0.0, 2.0};
    }
    SymMat2 h;
    if (quad_weight_ != 0.0) h = h + SymMat2{2.0 * quad_weight_, 0.0, 2.0 * quad_weight_};
    for (const auto& w : wells_) {
        const Vec2 d = r - w.center;
        const double e = std::exp(-dot(d, mul(w.shape, d)));
        const Vec2 pd = mul(w.shape, d);
        h = h + (-2.0 * w.amplitude * e) * (w.shape - 2.0 * outer(pd));
    }
    if (cone_weight_ != 0.0) {
        const double len = norm(r);
        if (len > 0.0) {
            const Vec2 u = r / len;
            h = h + (cone_weight_ / len) * (SymMat2{1.0, 0.0, 1.0} - outer(u));
        }
    }
    return h;
}

Vec2 fd_gradient(const ScalarField& field, Vec2 r, double h) {
    const double gx = (field.value({r.x + h, r.y}) - field.value({r.x - h, r.y})) / (2.0 * h);
    const double gy = (field.value({r.x, r.y + h}) - field.value({r.x, r.y - h})) / (2.0 * h);
    return {gx, gy};
}

SymMat2 fd_hessian(const ScalarField& field, Vec2 r, double h) {
    const double z0 = field.value(r);
    const double hxx =
        (field.value({r.x + h, r.y}) - 2.0 * z0 + field.value({r.x - h, r.y})) / (h * h);
    const double hyy =
        (field.value({r.x, r.y + h}) - 2.0 * z0 + field.value({r.x, r.y - h})) / (h * h);
    const double hxy = (field.value({r.x + h, r.y + h}) - field.value({r.x + h, r.y - h}) -
                        field.value({r.x - h, r.y + h}) + field.value({r.x - h, r.y - h})) /
                       (4.0 * h * h);
    return {hxx, hxy, hyy};
}

double hessian_spectral_norm(const ScalarField& field, Vec2 r) {
    return spectral_norm(field.hessian(r));
}

}  // namespace susd
