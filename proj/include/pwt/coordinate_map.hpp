#ifndef PWT_COORDINATE_MAP_HPP
#define PWT_COORDINATE_MAP_HPP

#include "pwt/grid.hpp"
#include "pwt/interp.hpp"
#include "pwt/profile.hpp"

#include <vector>

namespace pwt {

// Stretched coordinate y(x) = v0 * integral_0^x ds/v(s) with
// 1/v0 = (1/L) * integral ds/v. Strictly increasing, y(+-L/2) = +-L/2.
struct CoordinateMap {
    double v0 = 1.0;
    double L = 1.0;
    std::vector<double> y_samples; // on the shared grid
    MonotoneMap map;               // forward x -> y, inverse y -> x

    double y_of(double x) const { return map.forward(x); }
    double x_of(double y) const { return map.inverse(y); }
    double dy_dx(double x) const { return map.deriv(x); }
};

// Throws DivergentV0 when the endpoint-convergence heuristic detects a
// non-integrable 1/v; handles integrable endpoint zeros via tanh-sinh cells.
CoordinateMap coordinate_map(const ProfileFn& v, const SystemGeometry& geom,
                             double rel_tol = 1e-12);

} // namespace pwt

#endif
