#include "pwt/unfold.hpp"

#include "pwt/errors.hpp"
#include "pwt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pwt {

double unfolded_profile(const ProfileFn& v, double L, double x) {
    // Principal window first, with no translation: the fmod round trip can
    // round a point one ulp from a wall onto the wall itself, which matters
    // for profiles vanishing there. L - x is exact near both seams.
    if (x >= -0.5 * L && x <= 0.5 * L) return v.eval(x, L);
    if (x > 0.5 * L && x <= 1.5 * L) return v.eval(L - x, L);
    double r = std::fmod(x + 0.5 * L, 2.0 * L);
    if (r < 0.0) r += 2.0 * L;
    r -= 0.5 * L;
    return r <= 0.5 * L ? v.eval(r, L) : v.eval(L - r, L);
}

UnfoldedMap unfold(const ProfileFn& v, const SystemGeometry& geom) {
    const double L = geom.L;
    const int N = geom.grid_points;
    const int M = 2 * N - 1; // doubled channel, shared spacing
    const double h = geom.spacing();

    UnfoldedMap um;
    um.L = L;
    um.v_src = v;
    um.x_nodes.resize(M);
    for (int i = 0; i < M; ++i) um.x_nodes[i] = -0.5 * L + i * h;

    const auto iv = [&](double x) {
        const double vv = unfolded_profile(v, L, x);
        if (!(vv > 0.0) || !std::isfinite(vv))
            throw SingularValue("velocity not positive at x = " + std::to_string(x));
        return 1.0 / vv;
    };
    // Cells adjacent to the seams (images of the walls) may hold integrable
    // inverse-velocity singularities; use the double exponential rule there.
    const auto singular_at = [&](double x) {
        const double vv = unfolded_profile(v, L, x);
        return !(vv > 0.0) || !std::isfinite(vv);
    };

    std::vector<double> cum(M, 0.0);
    for (int i = 0; i + 1 < M; ++i) {
        const double a = um.x_nodes[i], b = um.x_nodes[i + 1];
        const bool sing = singular_at(a) || singular_at(b);
        const double cell = sing ? integrate_tanh_sinh(iv, a, b, 1e-12)
                                 : integrate_adaptive(iv, a, b, 1e-12, 0.0);
        if (!std::isfinite(cell))
            throw DivergentV0("inverse-velocity integral diverges near x = "
                              + std::to_string(a));
        cum[i + 1] = cum[i] + cell;
    }
    const double total = cum[M - 1];
    um.v0 = 2.0 * L / total;

    const int mid = (N - 1) / 2; // node at x = 0
    um.f_samples.resize(M);
    for (int i = 0; i < M; ++i) um.f_samples[i] = um.v0 * (cum[i] - cum[mid]);
    um.map = MonotoneMap(um.x_nodes, um.x_nodes.front(), h, um.f_samples);
    um.fL = um.f_samples[mid + (N - 1)]; // node at x = L
    return um;
}

double UnfoldedMap::f(double x) const {
    const double k = std::floor((x + 0.5 * L) / (2.0 * L));
    return map.forward(x - 2.0 * L * k) + 2.0 * L * k;
}

double UnfoldedMap::f_inverse(double y) const {
    const double y_lo = f_samples.front();
    const double k = std::floor((y - y_lo) / (2.0 * L));
    return map.inverse(y - 2.0 * L * k) + 2.0 * L * k;
}

double UnfoldedMap::traj(double x, double t, int sign) const {
    if (sign != 1 && sign != -1) throw UsageError("trajectory branch must be +1 or -1");
    return f_inverse(f(x) + sign * v0 * t);
}

} // namespace pwt
