#ifndef PWT_SEMICLASSICS_HPP
#define PWT_SEMICLASSICS_HPP

#include "pwt/slcoeffs.hpp"

#include <vector>

namespace pwt {

// Counting-slope check against L / (pi v0), fit with intercept over the
// upper half of the window. Needs at least 50 levels.
struct WeylReport {
    double slope = 0.0;
    double intercept = 0.0;
    double expected = 0.0;
    double rel_dev = 0.0;
    bool ok = false;
};
WeylReport weyl_check(const std::vector<double>& energies, double v0, double L,
                      double rel_tol = 0.01);

// Exact quantization phase for Neumann walls: phi(Lambda) = pi n at the
// n-th level, with the curvature correction included.
//   phi0 = integral sqrt(Lambda - V) dy
//   phi1 = (1/8) integral V'' (Lambda - V)^(-3/2) dy
// Lambda is the v0^2-scaled eigenvalue. Throws TurningPointError when
// Lambda does not clear the barrier top.
struct BSPhase {
    double phi0 = 0.0;
    double phi1 = 0.0;
    double total() const { return phi0 + phi1; }
};
BSPhase bs_phase(const LiouvilleForm& form, double lambda_scaled);

// phi(Lambda_n) - pi n for each level (Neumann convention). The sub-barrier
// levels of a varying potential cannot be phased, so pass a slice starting
// at label n0. Position i is compared against pi (n0 + i).
std::vector<double> quantization_residuals(const LiouvilleForm& form,
                                           const std::vector<double>& lambdas, int n0 = 0);

// sqrt(Lambda_n) L - pi n: the deviation of the raw tower from the
// conformal one. Decays like a1 L / (2 sqrt(Lambda)) at leading order.
std::vector<double> phase_residuals(const LiouvilleForm& form,
                                    const std::vector<double>& lambdas);

// Potential moments controlling the large-n expansion
//   sqrt(Lambda_n) L - pi n = a1 L/(2 sqrt(Lambda_n))
//                           + (a2 - delta) L/(8 Lambda_n^(3/2)) + ...
// a1 = mean V, a2 = mean V^2, delta = (V'(L/2) - V'(-L/2)) / L.
struct MomentReport {
    double a1 = 0.0;
    double a2 = 0.0;
    double delta = 0.0;
    double tol1 = 0.0;
    double tol2 = 0.0;
    bool a1_zero = false;
    bool second_zero = false; // a2 - delta within tol2
    bool divergent = false;   // samples not finite; verdicts meaningless
};
MomentReport moment_conditions(const LiouvilleForm& form);

// Least-squares fit of phase residuals to the two-term decay law over level
// indices [n_lo, n_hi]; c1 estimates a1, c3 estimates a2 - delta.
struct ResidualFit {
    double c1 = 0.0;
    double c3 = 0.0;
    double rms = 0.0;
};
ResidualFit fit_phase_residuals(const LiouvilleForm& form, const std::vector<double>& lambdas,
                                int n_lo, int n_hi);

} // namespace pwt

#endif
