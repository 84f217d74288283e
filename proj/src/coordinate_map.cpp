#include "pwt/coordinate_map.hpp"

#include "pwt/errors.hpp"
#include "pwt/quadrature.hpp"

#include <cmath>

namespace pwt {

namespace {

bool endpoint_singular(const ProfileFn& v, double L) {
    const double a = v.eval(-0.5 * L, L);
    const double b = v.eval(0.5 * L, L);
    return !(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0);
}

} // namespace

CoordinateMap coordinate_map(const ProfileFn& v, const SystemGeometry& geom, double rel_tol) {
    const double L = geom.L;
    const std::vector<double> x = make_grid(geom);
    const int n = geom.grid_points;
    auto inv_v = [&](double s) { return 1.0 / eval_strict_positive(v, s, L); };

    const bool singular = endpoint_singular(v, L);
    if (singular) {
        // Convergence heuristic: shrink the endpoint offset twice; if the
        // partial integrals keep growing by non-decreasing increments the
        // integral has no finite limit.
        const double d0 = 1e-3 * L;
        const double i0 = integrate_adaptive(inv_v, -0.5 * L + d0, 0.5 * L - d0, 1e-10);
        const double i1 = integrate_adaptive(inv_v, -0.5 * L + 0.5 * d0, 0.5 * L - 0.5 * d0, 1e-10);
        const double i2 = integrate_adaptive(inv_v, -0.5 * L + 0.25 * d0, 0.5 * L - 0.25 * d0, 1e-10);
        const double inc1 = i1 - i0;
        const double inc2 = i2 - i1;
        if (inc1 > 1e-8 * std::abs(i0) && inc2 >= 0.999 * inc1)
            throw DivergentV0("coordinate_map: 1/v has no finite mean (endpoint divergence)");
    }

    // Cumulative integral of 1/v cell by cell; singular endpoint cells get
    // the double-exponential rule, interior cells a fixed Kronrod panel.
    std::vector<double> cum(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        const bool edge_cell = singular && (i == 0 || i + 2 == n);
        double cell;
        if (edge_cell)
            cell = integrate_tanh_sinh(inv_v, x[i], x[i + 1], rel_tol);
        else
            cell = integrate_adaptive(inv_v, x[i], x[i + 1], rel_tol);
        cum[i + 1] = cum[i] + cell;
    }
    const double total = cum.back();
    if (!(total > 0.0) || !std::isfinite(total))
        throw DivergentV0("coordinate_map: mean of 1/v not finite");

    CoordinateMap cm;
    cm.L = L;
    cm.v0 = L / total;
    cm.y_samples.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cm.y_samples[i] = cm.v0 * cum[i] - 0.5 * L;
    cm.map = MonotoneMap({}, -0.5 * L, geom.spacing(), cm.y_samples);
    return cm;
}

} // namespace pwt
