#include "pwt/grid.hpp"

#include "pwt/errors.hpp"

#include <cmath>
#include <cstddef>

namespace pwt {

SystemGeometry::SystemGeometry(double length, int points) : L(length), grid_points(points) {
    if (!(L > 0.0) || !std::isfinite(L))
        throw InconsistentInput("SystemGeometry: L must be positive and finite");
    if (grid_points < 16 || grid_points % 2 == 0)
        throw InconsistentInput("SystemGeometry: grid_points must be odd and >= 16");
}

std::vector<double> make_grid(const SystemGeometry& geom) {
    const int n = geom.grid_points;
    const int mid = (n - 1) / 2;
    const double h = geom.spacing();
    std::vector<double> x(static_cast<std::size_t>(n));
    x[static_cast<std::size_t>(mid)] = 0.0;
    for (int i = 0; i < mid; ++i) {
        const double xi = -0.5 * geom.L + i * h;
        x[static_cast<std::size_t>(i)] = xi;
        x[static_cast<std::size_t>(n - 1 - i)] = -xi;
    }
    return x;
}

double simpson(const std::vector<double>& samples, double h) {
    const std::size_t n = samples.size();
    if (n < 3 || n % 2 == 0)
        throw InconsistentInput("simpson: needs an odd sample count >= 3");
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i + 1 < n; i += 2) odd += samples[i];
    for (std::size_t i = 2; i + 1 < n; i += 2) even += samples[i];
    return h / 3.0 * (samples.front() + samples.back() + 4.0 * odd + 2.0 * even);
}

std::vector<double> cumulative_integral(const std::vector<double>& samples, double h) {
    const std::size_t n = samples.size();
    if (n < 4)
        throw InconsistentInput("cumulative_integral: needs >= 4 samples");
    std::vector<double> out(n, 0.0);
    // Integral over cell [i, i+1] of the cubic through samples j0..j0+3,
    // exact for cubics. Weights depend on the cell position inside the stencil.
    // Stencil offset 0 (cell between nodes 1 and 2 of the stencil) weights:
    //   h * (-1/24, 13/24, 13/24, -1/24)
    // Offset left (cell between nodes 0 and 1): h * (9/24, 19/24, -5/24, 1/24)
    // Offset right (cell between nodes 2 and 3): mirrored left weights.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double inc;
        if (i == 0) {
            inc = h / 24.0 * (9.0 * samples[0] + 19.0 * samples[1] - 5.0 * samples[2] + samples[3]);
        } else if (i + 2 == n) {
            inc = h / 24.0 *
                  (9.0 * samples[n - 1] + 19.0 * samples[n - 2] - 5.0 * samples[n - 3] + samples[n - 4]);
        } else {
            inc = h / 24.0 *
                  (-samples[i - 1] + 13.0 * samples[i] + 13.0 * samples[i + 1] - samples[i + 2]);
        }
        out[i + 1] = out[i] + inc;
    }
    return out;
}

} // namespace pwt
