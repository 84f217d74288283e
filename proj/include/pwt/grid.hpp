#ifndef PWT_GRID_HPP
#define PWT_GRID_HPP

#include <vector>

namespace pwt {

// Interval [-L/2, L/2] sampled on a uniform grid with an odd node count,
// so x = 0 is a node and x -> -x maps nodes to nodes bitwise.
struct SystemGeometry {
    double L = 1.0;
    int grid_points = 1025;

    SystemGeometry() = default;
    SystemGeometry(double length, int points);

    double spacing() const { return L / (grid_points - 1); }
};

// Nodes built symmetrically: x[i] is computed once for the left half and
// mirrored, so x[n-1-i] == -x[i] holds exactly in floating point.
std::vector<double> make_grid(const SystemGeometry& geom);

// Composite Simpson integral of uniformly spaced samples (odd count).
double simpson(const std::vector<double>& samples, double h);

// Cumulative integral of uniformly spaced samples via piecewise cubic
// (4-point Lagrange per cell, one-sided at the ends). out[0] = 0.
std::vector<double> cumulative_integral(const std::vector<double>& samples, double h);

} // namespace pwt

#endif
