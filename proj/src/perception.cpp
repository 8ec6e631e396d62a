#include "susd/perception.hpp"

#include <cmath>
#include <stdexcept>

#include "susd/errors.hpp"

namespace susd {

Vec2 local_center(const std::vector<Vec2>& members) {
    if (members.empty()) throw DegenerateInputError("local center of an empty set");
    Vec2 sum;
    for (const Vec2& r : members) sum += r;
    return sum / static_cast<double>(members.size());
}

SymMat2 covariance(const std::vector<Vec2>& members) {
    if (members.size() < 2)
        throw DegenerateInputError("covariance needs at least two positions");
    const Vec2 center = local_center(members);
    SymMat2 c;
    for (const Vec2& r : members) {
        const Vec2 d = r - center;
        c = c + outer(d);
    }
    return c;
}

Vec2 oja_flow(const SymMat2& c, Vec2 q_init, double duration, double substep) {
    return oja_flow_trace(c, q_init, duration, substep, nullptr);
}

Vec2 oja_flow_trace(const SymMat2& c, Vec2 q_init, double duration, double substep,
                    std::vector<Vec2>* trace) {
    const double init_len = norm(q_init);
    if (init_len < 1e-12) throw std::invalid_argument("oja_flow needs a nonzero initial direction");
    if (!(duration > 0.0)) throw std::invalid_argument("oja_flow needs a positive duration");
    if (!(substep > 0.0) || substep > duration)
        throw std::invalid_argument("oja_flow substep must lie in (0, duration]");

    const long long count = std::max(1LL, std::llround(duration / substep));
    const double h = duration / static_cast<double>(count);

    Vec2 q = q_init / init_len;
    if (trace) {
        trace->clear();
        trace->reserve(static_cast<std::size_t>(count));
    }
    for (long long s = 0; s < count; ++s) {
        const Vec2 cq = mul(c, q);
        const Vec2 rate = cq - dot(q, cq) * q;
        q += h * rate;
        const double len = norm(q);
        if (!(len > 0.0) || !std::isfinite(len))
            throw NumericalError("oja_flow direction collapsed", static_cast<std::size_t>(s));
        q = q / len;
        if (trace) trace->push_back(q);
    }
    return q;
}

PrincipalAxes exact_principal_axes(const SymMat2& c, Vec2 reference_q) {
    const double mean = 0.5 * (c.c11 + c.c22);
    const double half_diff = 0.5 * (c.c11 - c.c22);
    const double disc = std::hypot(half_diff, c.c12);

    Vec2 ref = normalized(reference_q);
    if (norm(ref) == 0.0) ref = {1.0, 0.0};

    PrincipalAxes axes;
    axes.lambda_q = mean + disc;
    axes.lambda_n = mean - disc;

    if (2.0 * disc < kDegenerateGap) {
        axes.q = ref;
        axes.n = rotate90(ref);
        return axes;
    }

    // Candidate eigenvectors (b, lambda_q - a) and (lambda_q - c22, b); keep the
    // better-conditioned one.
    const Vec2 v1{c.c12, axes.lambda_q - c.c11};
    const Vec2 v2{axes.lambda_q - c.c22, c.c12};
    Vec2 q = norm2(v1) >= norm2(v2) ? v1 : v2;
    q = q / norm(q);
    if (dot(q, ref) < 0.0) q = -q;

    axes.q = q;
    axes.n = rotate90(q);
    return axes;
}

}  // namespace susd
