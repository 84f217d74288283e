#ifndef PWT_SOLVER_SHOOTING_HPP
#define PWT_SOLVER_SHOOTING_HPP

#include "pwt/grid.hpp"
#include "pwt/slcoeffs.hpp"
#include "pwt/spectrum.hpp"

namespace pwt {

struct ShootingOptions {
    double rel_tol = 1e-11;     // eigenvalue tolerance relative to max(|lambda|, scale)
    double ode_rel_tol = 1e-12;
    double ode_abs_tol = 1e-14;
    int max_bracket_steps = 60; // doublings before BracketError
};

// Total phase accumulated across the interval at spectral parameter lambda;
// the n-th eigenvalue solves phase = base_angle(right) + n*pi. Strictly
// increasing in lambda.
double shooting_phase(const SLProblem& prob, double lambda, const ShootingOptions& opts = {});

// Eigenvalues 0..n_max by bracketed phase matching (bisection plus
// safeguarded secant). Requires p, w finite and positive on the closed
// interval; clamp irregular endpoints before calling.
SLSpectrum solve_spectrum_shooting(const SLProblem& prob, int n_max,
                                   const ShootingOptions& opts = {});

// Eigenfunction at a converged eigenvalue, sampled on the shared grid,
// normalized to unit weighted norm with u > 0 at the left wall. U is the
// running integral of w*u from the left wall.
EigenMode eigenfunction(const SLProblem& prob, const SystemGeometry& geom, double lambda,
                        int n, const ShootingOptions& opts = {});

std::vector<EigenMode> eigenmodes(const SLProblem& prob, const SystemGeometry& geom,
                                  const SLSpectrum& spec, int n_max,
                                  const ShootingOptions& opts = {});

} // namespace pwt

#endif
