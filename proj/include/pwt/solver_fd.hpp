#ifndef PWT_SOLVER_FD_HPP
#define PWT_SOLVER_FD_HPP

#include "pwt/slcoeffs.hpp"
#include "pwt/spectrum.hpp"

namespace pwt {

struct FDOptions {
    int base_points = 0;   // 0: sized automatically from n_max
    int refinements = 1;   // 1 or 2 half-spacing Richardson stages
    double rel_tol = 1e-4; // ConvergenceError when the error estimate exceeds this
};

// Finite-volume discretization with half-cell boundary closure, eigenvalues
// by Sturm-count bisection, Richardson extrapolation across grid halvings.
SLSpectrum solve_spectrum_fd(const SLProblem& prob, int n_max, const FDOptions& opts = {});

} // namespace pwt

#endif
