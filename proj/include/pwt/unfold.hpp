#ifndef PWT_UNFOLD_HPP
#define PWT_UNFOLD_HPP

#include "pwt/grid.hpp"
#include "pwt/interp.hpp"
#include "pwt/profile.hpp"

#include <vector>

namespace pwt {

// Mirror-doubled velocity on [-L/2, 3L/2], extended 2L-periodically:
// vbar(x) = v(x) on the channel, v(L - x) on the image half.
double unfolded_profile(const ProfileFn& v, double L, double x);

// Stretched coordinate of the doubled channel, fbar(0) = 0, lifted to the
// whole line by fbar(x + 2L) = fbar(x) + 2L. The doubled harmonic mean
// always equals the folded one; fbar(L) = L exactly when v is even.
struct UnfoldedMap {
    double v0 = 1.0;
    double L = 1.0;
    double fL = 1.0;                 // fbar(L)
    std::vector<double> x_nodes;     // [-L/2, 3L/2]
    std::vector<double> f_samples;
    MonotoneMap map;
    ProfileFn v_src = ProfileFn::constant(1.0);

    double f(double x) const;
    double f_inverse(double y) const;
    double vbar(double x) const { return unfolded_profile(v_src, L, x); }
    double fprime(double x) const { return v0 / vbar(x); }
    // Characteristic through x after time t; sign = +1 or -1 picks the
    // branch. traj(L - x, t, s) = L - traj(x, t, -s) for any v.
    double traj(double x, double t, int sign) const;
};

UnfoldedMap unfold(const ProfileFn& v, const SystemGeometry& geom);

} // namespace pwt

#endif
